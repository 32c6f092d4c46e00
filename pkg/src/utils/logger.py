import logging
import sys
from datetime import datetime, timezone
from pathlib import Path


class UTCFormatter(logging.Formatter):
    """Custom formatter that uses UTC timezone for timestamps."""

    def formatTime(self, record, datefmt=None):
        dt = datetime.fromtimestamp(record.created, tz=timezone.utc)
        return dt.strftime(datefmt or "%Y-%m-%d %H:%M:%S %Z")


class MpmathReprFilter(logging.Filter):
    """Shorten long mpmath reprs that leak into log messages."""

    def __init__(self, max_length: int = 400):
        super().__init__()
        self.max_length = max_length

    def filter(self, record):
        msg = record.getMessage()
        if len(msg) > self.max_length:
            record.msg = msg[:self.max_length] + " ..."
            record.args = ()
        return True


def setup_logger(level: str = "INFO", log_dir: str | None = "logs"):
    """Configure logging with UTC timestamps.

    Data goes to stdout, so the console handler writes to stderr.
    """
    logger = logging.getLogger()
    logger.setLevel(getattr(logging, str(level).upper(), logging.INFO))

    # Clear any existing handlers
    logger.handlers = []

    formatter = UTCFormatter(
        fmt='%(asctime)s [%(levelname)s] %(name)s: %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S %Z'
    )
    repr_filter = MpmathReprFilter()

    if log_dir:
        Path(log_dir).mkdir(parents=True, exist_ok=True)

        # File handler for general logs
        file_handler = logging.FileHandler(Path(log_dir) / 'partitions-output.log')
        file_handler.setLevel(logger.level)
        file_handler.setFormatter(formatter)
        file_handler.addFilter(repr_filter)
        logger.addHandler(file_handler)

        # File handler for errors
        error_handler = logging.FileHandler(Path(log_dir) / 'partitions-errors.log')
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(formatter)
        error_handler.addFilter(repr_filter)
        logger.addHandler(error_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.WARNING if not sys.stderr.isatty() else logger.level)
    console_handler.setFormatter(formatter)
    console_handler.addFilter(repr_filter)
    logger.addHandler(console_handler)

    return logger
