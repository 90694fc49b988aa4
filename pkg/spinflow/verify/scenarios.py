"""
Runs groups of verification scenarios, spreading them over the MPI ranks and,
within a rank, over a pool of worker threads
"""
import os
import time
from concurrent.futures import ThreadPoolExecutor
from spinflow.exceptions import SpinflowUsageError
from spinflow.utils.config import THREADS_ENV
from spinflow.utils.mpi import local_share, gather_shares
from spinflow.utils.logging import logger


def max_threads():
    "Size of the work pool, capped by the SPINFLOW_THREADS variable"
    value = os.environ.get(THREADS_ENV)
    if value is None:
        return 1
    try:
        threads = int(value)
    except ValueError:
        raise SpinflowUsageError(
            "{} must be a positive integer, got '{}'".format(THREADS_ENV,
                                                            value))
    if threads < 1:
        raise SpinflowUsageError(
            "{} must be a positive integer, got '{}'".format(THREADS_ENV,
                                                            value))
    return threads


def _timed(scenario):
    name, func, kwargs = scenario
    logger.info("Running scenario '{}'".format(name))
    start = time.time()
    report = func(**kwargs)
    report.timings[name] = time.time() - start
    logger.info(report.summary())
    return report


def run_scenarios(scenarios, threads=None):
    """
    Runs (name, function, kwargs) scenarios, each function returning a
    VerifyReport, and returns the reports in the order of `scenarios` on every
    rank

    Parameters
    ----------
    scenarios : list(tuple)
        The scenarios to run
    threads : int | None
        Size of the thread pool, defaulting to `max_threads()`
    """
    if threads is None:
        threads = max_threads()
    share = local_share(list(scenarios))
    if threads == 1 or len(share) < 2:
        reports = [_timed(s) for s in share]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(_timed, share))
    return gather_shares(reports)
