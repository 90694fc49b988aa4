"""
Prints the usage of a spinflow command, or lists the commands and exit codes
when no command is given
"""
from __future__ import print_function
from argparse import ArgumentParser

EXIT_CODE_MEANINGS = (
    (0, "all asserted checks passed"),
    (1, "an asserted check failed (see report.json)"),
    (2, "invalid parameters or arguments"),
    (3, "a dimension exceeded the dense or check cap"),
    (4, "numerical failure (Hermiticity, gap closure, series divergence or "
        "consistency)"))


def argparser():
    parser = ArgumentParser(prog='spinflow help', description=__doc__)
    parser.add_argument('cmd', nargs='?', default=None,
                        help="Command to print the usage of")
    return parser


def all_cmds():
    "Names of the commands exposed by spinflow.cmd, in alphabetical order"
    return sorted(c for c in dir(spinflow.cmd)
                  if not c.startswith('_') and
                  hasattr(getattr(spinflow.cmd, c), 'argparser'))


def get_parser(cmd):
    return getattr(spinflow.cmd, cmd).argparser()


def available_cmds_message():
    cmds = '\n'.join('    {}\n        {}'.format(c, _summary(c))
                     for c in all_cmds())
    codes = '\n'.join('    {}  {}'.format(code, meaning)
                      for code, meaning in EXIT_CODE_MEANINGS)
    return ("usage: spinflow <cmd> <args>\n\n"
            "available commands:\n{}\n\n"
            "exit codes:\n{}".format(cmds, codes))


def _summary(cmd):
    # First paragraph of the command's module docstring
    description = get_parser(cmd).description.strip()
    return ' '.join(description.split('\n\n')[0].split())


def run(argv):
    args = argparser().parse_args(argv)
    if args.cmd is None:
        print(available_cmds_message())
    elif args.cmd in all_cmds():
        get_parser(args.cmd).print_help()
    else:
        from spinflow.exceptions import SpinflowUsageError
        raise SpinflowUsageError(
            "Unrecognised command '{}' (available: {})".format(
                args.cmd, ', '.join(all_cmds())))
    return 0


import spinflow.cmd  # @IgnorePep8

if __name__ == '__main__':
    import sys
    sys.exit(run(sys.argv[1:]))
