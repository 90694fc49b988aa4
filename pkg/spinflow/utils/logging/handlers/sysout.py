import sys
import logging
from .. import loglevel, logger

logger.setLevel(loglevel)
if not any(getattr(h, '_spinflow_sysout', False) for h in logger.handlers):
    handler = logging.StreamHandler(sys.stdout)
    formatter = logging.Formatter(
        '%(levelname)s - %(message)s')
    handler.setFormatter(formatter)
    handler._spinflow_sysout = True
    logger.addHandler(handler)
