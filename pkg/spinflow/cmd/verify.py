"""
Runs the complete acceptance battery: exact gaps of the unperturbed
Hamiltonians, the spectral statements about K_Λ(t) over the t-grid and the
invariants of the flow compared with exact diagonalization
"""
from argparse import ArgumentParser
from spinflow.utils.arguments import add_model_arguments, int_list
from spinflow.utils.logging import set_verbosity


def argparser():
    parser = ArgumentParser(prog='spinflow verify',
                            description=__doc__)
    add_model_arguments(parser, t_grid=True)
    parser.add_argument('--sizes', type=int_list, default=None,
                        help="Range sizes of the gap checks (default "
                        "5,6,7,8)")
    return parser


def run(argv):
    from spinflow.utils.config import parse_config
    from spinflow.verify import verify_battery, run_scenarios
    from spinflow.utils.output import finish_run
    args = argparser().parse_args(argv)
    set_verbosity(args.verbose, args.quiet)
    config = parse_config('verify', args)
    scenarios = verify_battery(
        config.params, t_grid=config.t_grid, sizes=config.sizes,
        tolerances=config.tolerances, check_cap=config.check_cap,
        dense_cap=config.dense_cap, seed=config.seed)
    reports = run_scenarios(scenarios)
    return finish_run('verify', config, reports)
