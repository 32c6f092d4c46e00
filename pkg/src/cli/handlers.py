import logging
import sys
import traceback

from pydantic import ValidationError

from src.cli.commands import COMMAND_RUNNERS
from src.cli.config import RunConfig
from src.cli.output import write_rows
from src.utils.errors import ArgumentError, CapabilityError, NumericError
from src.utils.precision import set_precision

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_ARGUMENT = 2
EXIT_CAPABILITY = 3
EXIT_NUMERIC = 4


def handle_run(cfg: RunConfig, config: dict, stream=None) -> int:
    """Run one command and write its table to stream (stdout by default)."""
    set_precision(cfg.precision_digits)
    runner, row_model = COMMAND_RUNNERS[cfg.command]
    logger.info(f"Running {cfg.command} for {cfg.spec_text} at {cfg.precision_digits} digits")
    rows = runner(cfg, config)
    write_rows(row_model, rows, cfg.format, stream or sys.stdout)
    return EXIT_OK


def error_handler(error: BaseException) -> int:
    """Report an error on stderr and map it to an exit code."""
    if isinstance(error, ValidationError):
        for issue in error.errors():
            print(f"error: {issue['msg']}", file=sys.stderr)
        return EXIT_ARGUMENT
    if isinstance(error, ArgumentError):
        print(f"error: {error}", file=sys.stderr)
        return EXIT_ARGUMENT
    if isinstance(error, CapabilityError):
        print(f"error: {error}", file=sys.stderr)
        return EXIT_CAPABILITY
    if isinstance(error, NumericError):
        logger.error(f"Numeric failure: {error}")
        print(f"error: {error}", file=sys.stderr)
        return EXIT_NUMERIC
    logger.error(f"Unexpected error: {error}")
    logger.error(traceback.format_exc())
    print(f"error: {error}", file=sys.stderr)
    return EXIT_UNEXPECTED
