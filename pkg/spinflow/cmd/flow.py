"""
Runs the block-diagonalization flow on the XXZ chain, checking the
conjugation identity after every step, and reports the transcript of steps
together with the final block of K_Λ(t) on the ground states
"""
from argparse import ArgumentParser
from spinflow.utils.arguments import add_model_arguments, positive_int
from spinflow.utils.logging import logger, set_verbosity


def argparser():
    parser = ArgumentParser(prog='spinflow flow',
                            description=__doc__)
    add_model_arguments(parser)
    parser.add_argument('--max-steps', dest='max_steps', type=positive_int,
                        default=None,
                        help=("Stop after this many local steps (the final "
                              "step is skipped when the flow is truncated)"))
    parser.add_argument('--no-check', dest='check', action='store_false',
                        default=True,
                        help="Skip the per-step consistency check")
    return parser


def run(argv):
    from spinflow.utils.config import parse_config
    from spinflow.flow import run_flow
    from spinflow.verify import VerifyReport, Check
    from spinflow.verify.checks import ledgers
    from spinflow.utils.output import finish_run
    args = argparser().parse_args(argv)
    set_verbosity(args.verbose, args.quiet)
    config = parse_config('flow', args)
    p = config.params
    tols = config.tolerances
    history, final = run_flow(
        p, max_steps=args.max_steps, check=args.check, tolerances=tols,
        check_cap=config.check_cap, dense_cap=config.dense_cap,
        seed=config.seed)
    report = VerifyReport('flow', p.to_dict())
    reports = [s.reports[-1] for s in history[1:]]
    residuals = [r.consistency_residual for r in reports
                 if r.consistency_residual is not None]
    if residuals:
        report.add(Check.below('consistency', max(residuals),
                               tols['consistency']))
    extra = {'transcript': [r.to_dict() for r in reports]}
    if final is not None:
        report.add(Check.below('final_block_diagonal',
                               final.report.block_residual, tols['block']))
        ledgers(report, p, history, final)
        extra['final'] = final.to_dict()
        logger.info("Ground energies {} with gap {:.10f} to the rest of the "
                    "spectrum".format(
                        ', '.join('{:.12f}'.format(e)
                                  for e in final.block_eigenvalues),
                        final.gap))
    else:
        logger.info("Flow truncated after {} steps".format(len(reports)))
    return finish_run('flow', config, [report], extra=extra)
