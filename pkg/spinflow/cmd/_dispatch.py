"""
Runs a spinflow command, mapping its outcome to the process exit code
"""
from __future__ import print_function
import sys
import spinflow.cmd
from spinflow.cmd.help import all_cmds, available_cmds_message
from spinflow.exceptions import (
    SpinflowUsageError, SpinflowTypeError, SpinflowResourceError,
    SpinflowRuntimeError)
from spinflow.utils.logging import logger

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_NUMERICAL = 4


def main(argv=None):
    """
    Dispatches `argv` (defaulting to sys.argv[1:]) to the named command and
    returns the exit code
    """
    if argv is None:
        argv = sys.argv[1:]
    if not argv or argv[0] in ('-h', '--help'):
        print(available_cmds_message())
        return EXIT_OK if argv else EXIT_USAGE
    cmd_name = argv[0]
    if cmd_name not in all_cmds():
        print("'{}' is not a spinflow command\n\n{}".format(
            cmd_name, available_cmds_message()), file=sys.stderr)
        return EXIT_USAGE
    cmd = getattr(spinflow.cmd, cmd_name)
    try:
        code = cmd.run(argv[1:])
    except SystemExit as e:
        # argparse exits with 2 on bad arguments and 0 after --help
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except (SpinflowUsageError, SpinflowTypeError) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except SpinflowResourceError as e:
        logger.error(str(e))
        return EXIT_RESOURCE
    except SpinflowRuntimeError as e:
        logger.error("{}: {}".format(type(e).__name__, e))
        return EXIT_NUMERICAL
    return EXIT_OK if code is None else code
