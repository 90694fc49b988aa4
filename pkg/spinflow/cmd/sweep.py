"""
Scans the hopping t over a grid, recording the gap (ferromagnetic) or the
splitting of the two lowest levels and the gap above them
(antiferromagnetic), and the growth of the hooked Ising commutator
"""
from argparse import ArgumentParser
from spinflow.utils.arguments import add_model_arguments, int_list
from spinflow.utils.logging import set_verbosity


def argparser():
    parser = ArgumentParser(prog='spinflow sweep',
                            description=__doc__)
    add_model_arguments(parser, t_grid=True)
    parser.add_argument('--hooked-xi', dest='hooked_xi', type=int_list,
                        default=None,
                        help=("Comma-separated spacings ξ of the hooked "
                              "commutator scan, each on the shortest chain "
                              "admitting it (default: --xi only)"))
    return parser


def run(argv):
    from spinflow.utils.config import parse_config
    from spinflow.verify import (
        check_theorem_ferro, check_theorem_af, check_hooked_scaling,
        run_scenarios)
    from spinflow.utils.output import finish_run
    args = argparser().parse_args(argv)
    set_verbosity(args.verbose, args.quiet)
    config = parse_config('sweep', args)
    p = config.params
    theorem = check_theorem_ferro if p.is_ferro else check_theorem_af
    scenarios = [
        ('theorem', theorem,
         {'p': p, 't_grid': config.t_grid, 'tolerances': config.tolerances,
          'dense_cap': config.dense_cap, 'seed': config.seed}),
        ('hooked_scaling', check_hooked_scaling,
         {'p': p, 't_grid': config.t_grid, 'xis': args.hooked_xi})]
    reports = run_scenarios(scenarios)
    return finish_run('sweep', config, reports)
