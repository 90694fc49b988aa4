import logging

logger = logging.getLogger('spinflow')
loglevel = logging.INFO


def set_verbosity(verbose=False, quiet=False):
    "Sets the package logger level from the --verbose/--quiet flags"
    if verbose:
        logger.setLevel(logging.DEBUG)
    elif quiet:
        logger.setLevel(logging.WARNING)
    else:
        logger.setLevel(loglevel)
