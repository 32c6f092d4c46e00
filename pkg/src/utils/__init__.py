from .logger import setup_logger
from .config import load_config
from .precision import set_precision, cutoff
from .errors import (
    PartitionError,
    ArgumentError,
    ParseError,
    AdmissibilityError,
    FitError,
    CapabilityError,
    NumericError,
    PoleError,
    QuadratureError,
)

__all__ = [
    'setup_logger',
    'load_config',
    'set_precision',
    'cutoff',
    'PartitionError',
    'ArgumentError',
    'ParseError',
    'AdmissibilityError',
    'FitError',
    'CapabilityError',
    'NumericError',
    'PoleError',
    'QuadratureError',
]
