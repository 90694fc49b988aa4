"""
Compares the exact gaps of H⁰ and H^C on ranges of the given sizes with their
closed forms (and, antiferromagnetically, the frustration of odd ranges)
"""
from argparse import ArgumentParser
from spinflow.utils.arguments import add_model_arguments, int_list
from spinflow.utils.logging import logger, set_verbosity


def argparser():
    parser = ArgumentParser(prog='spinflow gaps',
                            description=__doc__)
    add_model_arguments(parser)
    parser.add_argument('--sizes', type=int_list, default=None,
                        help="Comma-separated range sizes (default 5,6,7,8)")
    return parser


def run(argv):
    from spinflow.utils.config import parse_config
    from spinflow.verify import check_propositions
    from spinflow.utils.output import finish_run
    args = argparser().parse_args(argv)
    set_verbosity(args.verbose, args.quiet)
    config = parse_config('gaps', args)
    report = check_propositions(config.params, sizes=config.sizes,
                                tolerances=config.tolerances)
    for row in report.tables.get('gaps', []):
        logger.info("{kind} on {size} sites: gap {measured:.12f} "
                    "(closed form {expected:.12f})".format(**row))
    return finish_run('gaps', config, [report])
