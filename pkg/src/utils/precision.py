import logging
import math

from mpmath import mp

from src.utils.errors import ArgumentError

logger = logging.getLogger(__name__)

DEFAULT_DIGITS = 50


def set_precision(digits: int = DEFAULT_DIGITS) -> int:
    """Set the process-wide working precision (decimal digits)."""
    if digits < 15:
        raise ArgumentError(f"precision must be at least 15 digits, got {digits}")
    mp.dps = int(digits)
    logger.debug(f"Working precision set to {digits} digits")
    return mp.dps


def cutoff(sigma, margin: int = 0) -> int:
    """Part cutoff M(sigma) = ceil(digits * ln 10 / sigma) for the current precision."""
    return int(math.ceil((mp.dps + margin) * math.log(10) / float(sigma)))

