from .constants import AsymConstants, Estimate, constants, correction, estimate, rho_expansion

__all__ = [
    'AsymConstants',
    'Estimate',
    'constants',
    'correction',
    'estimate',
    'rho_expansion',
]
