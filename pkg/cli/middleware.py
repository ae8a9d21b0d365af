"""
Command wrappers for logging, timing and exit codes
"""
import functools
import logging
import sys
import time

from models.errors import ToolkitError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def setup_logging(verbose: bool = False) -> None:
    """Log to standard error so that standard output stays machine-readable"""
    level = logging.DEBUG if verbose else logging.WARNING
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    # basicConfig is a no-op once the root logger has handlers
    logging.getLogger().setLevel(level)


def logged_command(handler):
    """Log each command with its outcome and elapsed time"""

    @functools.wraps(handler)
    def wrapper(args):
        start_time = time.time()

        logger.info(f"Command: {args.command}")

        code = handler(args)

        process_time = time.time() - start_time
        logger.info(f"Exit: {code} (completed in {process_time:.3f}s)")

        return code

    return wrapper


def input_errors(handler):
    """Turn toolkit and file errors into exit code 2 with a diagnostic on stderr"""

    @functools.wraps(handler)
    def wrapper(args):
        try:
            return handler(args)
        except ToolkitError as e:
            logger.debug(f"{type(e).__name__} in {args.command}", exc_info=True)
            print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
            return EXIT_USAGE
        except (OSError, ValueError) as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_USAGE

    return wrapper
