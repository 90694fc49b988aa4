"""
argparse type functions and the flags shared by the commands
"""
import os.path
from argparse import ArgumentTypeError
import spinflow.utils.logging.handlers.sysout  # @UnusedImport
from spinflow.utils.config import DEFAULT_TOLERANCES


def existing_file(fname):
    if not os.path.isfile(fname):
        raise ArgumentTypeError(
            "'{}' does not refer to an existing file".format(fname))
    return fname


def positive_int(arg):
    try:
        value = int(arg)
    except ValueError:
        raise ArgumentTypeError("'{}' is not an integer".format(arg))
    if value < 1:
        raise ArgumentTypeError("'{}' is not a positive integer".format(arg))
    return value


def float_grid(arg):
    "Comma-separated list of positive floats, e.g. '1e-4,1e-3,1e-2'"
    try:
        values = [float(x) for x in arg.split(',') if x.strip()]
    except ValueError:
        raise ArgumentTypeError(
            "'{}' is not a comma-separated list of numbers".format(arg))
    if not values or any(v <= 0.0 for v in values):
        raise ArgumentTypeError(
            "'{}' must hold at least one value, all positive".format(arg))
    return values


def int_list(arg):
    try:
        return [int(x) for x in arg.split(',') if x.strip()]
    except ValueError:
        raise ArgumentTypeError(
            "'{}' is not a comma-separated list of integers".format(arg))


def tolerance(arg):
    "NAME=VALUE override of a named tolerance"
    try:
        name, value = arg.split('=')
        return name.strip(), float(value)
    except ValueError:
        raise ArgumentTypeError(
            "'{}' is not of the form NAME=VALUE (e.g. consistency=1e-9)"
            .format(arg))


def named_tolerance(name):
    "Type of the --tol.<name> VALUE flags, giving the same pairs as --tol"
    def parse(arg):
        try:
            return name, float(arg)
        except ValueError:
            raise ArgumentTypeError(
                "'{}' is not a valid value for tolerance '{}'".format(
                    arg, name))
    return parse


def add_model_arguments(parser, t_grid=False):
    """
    Adds the flags overriding the model section of a config file. Values left
    unset fall back to the config file and then to the defaults
    """
    parser.add_argument('--config', type=existing_file, default=None,
                        help=("JSON (or YAML) file providing the settings, "
                              "overridden by the flags below"))
    parser.add_argument('--n', type=positive_int, default=None,
                        help="Number of sites N ((N-1)/ξ must be integral)")
    parser.add_argument('--xi', type=positive_int, default=None,
                        help="Macroscopic spacing ξ (a multiple of 3)")
    parser.add_argument('--j', type=float, default=None,
                        help="Ising coupling J (> 0 ferro, < 0 antiferro)")
    parser.add_argument('--h', type=float, default=None,
                        help="Magnetic field h")
    parser.add_argument('--t', type=float, default=None,
                        help="Hopping t (default 1e-3)")
    if t_grid:
        parser.add_argument('--t-grid', dest='t_grid', type=float_grid,
                            default=None,
                            help="Comma-separated hoppings of the sweeps")
    parser.add_argument('--out', default=None,
                        help="Directory to write the JSON report and CSVs to")
    parser.add_argument('--dense-cap', dest='dense_cap', type=positive_int,
                        default=None,
                        help="Largest dimension for dense eigensolvers")
    parser.add_argument('--check-cap', dest='check_cap', type=positive_int,
                        default=None,
                        help=("Largest dimension for full-matrix consistency "
                              "checks (sampled vectors above)"))
    parser.add_argument('--seed', type=int, default=None,
                        help="Seed of the sampled-vector checks")
    parser.add_argument('--tol', type=tolerance, action='append',
                        default=None, metavar='NAME=VALUE',
                        help="Override a named tolerance (repeatable)")
    for name in sorted(DEFAULT_TOLERANCES):
        parser.add_argument('--tol.' + name, dest='tol',
                            type=named_tolerance(name), action='append',
                            metavar='VALUE',
                            help=("Override the '{}' tolerance (default {})"
                                  .format(name, DEFAULT_TOLERANCES[name])))
    parser.add_argument('--verbose', action='store_true', default=False,
                        help="Log the per-target details of every step")
    parser.add_argument('--quiet', action='store_true', default=False,
                        help="Only log warnings and errors")
