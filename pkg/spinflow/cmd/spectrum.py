"""
Prints the low-lying exact-diagonalization eigenvalues of K_Λ(t), the XXZ
chain with Ising coupling J, field h and hopping t
"""
from argparse import ArgumentParser
from spinflow.utils.arguments import add_model_arguments, positive_int
from spinflow.utils.logging import logger, set_verbosity


def argparser():
    parser = ArgumentParser(prog='spinflow spectrum',
                            description=__doc__)
    add_model_arguments(parser)
    parser.add_argument('--count', type=positive_int, default=None,
                        help="Number of eigenvalues to compute (default 6)")
    return parser


def run(argv):
    from spinflow.utils.config import parse_config
    from spinflow.verify import (
        low_spectrum, degenerate_groups, VerifyReport, Check, REPORT)
    from spinflow.utils.output import finish_run
    args = argparser().parse_args(argv)
    set_verbosity(args.verbose, args.quiet)
    config = parse_config('spectrum', args)
    p = config.params
    count = min(config.count, p.lattice.chain.dim)
    eigs = low_spectrum(p, count, dense_cap=config.dense_cap,
                        seed=config.seed)
    report = VerifyReport('spectrum', p.to_dict())
    report.add_rows('spectrum', [{'index': n, 'energy': e}
                                 for n, e in enumerate(eigs)])
    groups = degenerate_groups(eigs)
    report.add(Check('ground_degeneracy', groups[0], None, None, REPORT))
    if len(groups) > 1:
        report.add(Check('gap', eigs[groups[0]] - eigs[0], None, None,
                         REPORT))
    for n, e in enumerate(eigs):
        logger.info("E_{} = {:.12f}".format(n, e))
    return finish_run('spectrum', config, [report],
                      extra={'eigenvalues': list(eigs)})
