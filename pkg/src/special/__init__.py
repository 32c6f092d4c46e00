from .bernoulli import BernoulliCache, bernoulli, bernoulli_polynomial
from .functions import (
    log_gamma,
    gamma,
    riemann_zeta,
    zeta_deriv0,
    hurwitz_zeta,
    hurwitz_zeta_general,
    hurwitz_deriv0,
    hurwitz_deriv0_general,
)

__all__ = [
    'BernoulliCache',
    'bernoulli',
    'bernoulli_polynomial',
    'log_gamma',
    'gamma',
    'riemann_zeta',
    'zeta_deriv0',
    'hurwitz_zeta',
    'hurwitz_zeta_general',
    'hurwitz_deriv0',
    'hurwitz_deriv0_general',
]
