from .config import COMMANDS, RunConfig
from .parser import parse_spec, validate_spec
from .commands import (
    COMMAND_RUNNERS,
    correction_exponents,
    ladder,
    run_cauchy,
    run_compare,
    run_estimate,
    run_exact,
    run_fit,
    run_verify,
    weak_epsilon,
)
from .handlers import error_handler, handle_run
from .output import write_rows

__all__ = [
    'COMMANDS',
    'RunConfig',
    'parse_spec',
    'validate_spec',
    'COMMAND_RUNNERS',
    'correction_exponents',
    'ladder',
    'run_cauchy',
    'run_compare',
    'run_estimate',
    'run_exact',
    'run_fit',
    'run_verify',
    'weak_epsilon',
    'error_handler',
    'handle_run',
    'write_rows',
]
