import logging
import math
from functools import lru_cache
from math import factorial

import numpy as np
from mpmath import mp, mpf, mpc, mpmathify, exp, expm1, log, log1p

from src.models import LambdaSpec, LData, parts_up_to
from src.special import gamma, riemann_zeta
from src.utils.errors import ArgumentError, CapabilityError
from src.utils.precision import cutoff

logger = logging.getLogger(__name__)

# Eulerian numbers: Li_{-r}(x) = x * sum_i EULERIAN[r][i] x^i / (1 - x)^(r + 1)
EULERIAN = {
    0: (1,),
    1: (1,),
    2: (1, 1),
    3: (1, 4, 1),
    4: (1, 11, 11, 1),
    5: (1, 26, 66, 26, 1),
}

MAX_DERIVATIVE = 6
GUARD_DIGITS = 10


@lru_cache(maxsize=32)
def cached_parts(spec: LambdaSpec, x_max: int) -> tuple[int, ...]:
    return tuple(parts_up_to(spec, x_max))


def parts_array(spec: LambdaSpec, x_max: int) -> np.ndarray:
    """Parts up to x_max as a float64 array."""
    return np.asarray(cached_parts(spec, max(1, int(x_max))), dtype=np.float64)


def truncation(sigma, power: int = 0) -> int:
    """Part cutoff M(sigma) for the working precision, widened for m^power weights."""
    extra = 2 + math.ceil(math.log10(max(1.0, 1 / float(sigma))))
    M = cutoff(sigma, margin=extra)
    if power:
        M = cutoff(sigma, margin=extra + math.ceil(power * math.log10(M)))
    return M


def phi(spec: LambdaSpec, s):
    """Phi(s) = -sum over parts m of log(1 - exp(-s m)) for Re s > 0.

    Real s gives an mpf; complex s gives an mpc on the principal branch of each factor.
    """
    s = mpmathify(s)
    sigma = s.real if isinstance(s, mpc) else s
    if sigma <= 0:
        raise ArgumentError(f"phi needs Re s > 0, got {s}")
    M = truncation(sigma)
    parts = cached_parts(spec, M)
    with mp.workdps(mp.dps + GUARD_DIGITS):
        if isinstance(s, mpc):
            total = mp.fsum(-log1p(-exp(-s * m)) for m in parts)
        else:
            total = mp.fsum(
                -log(one_minus) if s * m <= 1 else -log1p(-x)
                for m, x, one_minus in _factors(parts, s)
            )
    logger.debug(f"phi at {mp.nstr(s, 8)} summed {len(parts)} parts (M = {M})")
    return +total


def _factors(parts, sigma: mpf):
    """Yield (m, exp(-sigma m), 1 - exp(-sigma m)) along increasing parts."""
    steps = {}
    previous, x = 0, mpf(1)
    for m in parts:
        gap = m - previous
        if gap not in steps:
            steps[gap] = exp(-sigma * gap)
        x *= steps[gap]
        previous = m
        yield m, x, (-expm1(-sigma * m) if sigma * m <= 1 else 1 - x)


def _polylog_neg(r: int, x: mpf, one_minus: mpf) -> mpf:
    """Li_{-r}(x) with 1 - x supplied separately for accuracy."""
    poly = mpf(0)
    for c in reversed(EULERIAN[r]):
        poly = poly * x + c
    return x * poly / one_minus ** (r + 1)


def phi_deriv(spec: LambdaSpec, sigma, k: int) -> mpf:
    """k-th derivative of Phi at real sigma > 0, for k = 1..6.

    Phi^(k)(sigma) = (-1)^k sum_m m^k Li_{1-k}(exp(-sigma m)).
    """
    if not 1 <= k <= MAX_DERIVATIVE:
        raise ArgumentError(f"derivative order must be in 1..{MAX_DERIVATIVE}, got {k}")
    sigma = mpf(sigma)
    if sigma <= 0:
        raise ArgumentError(f"phi_deriv needs sigma > 0, got {sigma}")
    M = truncation(sigma, power=k)
    parts = cached_parts(spec, M)
    with mp.workdps(mp.dps + GUARD_DIGITS):
        total = mp.fsum(
            mpf(m) ** k * _polylog_neg(k - 1, x, one_minus)
            for m, x, one_minus in _factors(parts, sigma)
        )
    return (-1) ** k * (+total)


def phi_derivs_float(parts: np.ndarray, sigma: float) -> tuple[float, float]:
    """(-Phi'(sigma), Phi''(sigma)) in double precision."""
    x = np.exp(-sigma * parts)
    one_minus = -np.expm1(-sigma * parts)
    ratio = x / one_minus
    return float(np.sum(parts * ratio)), float(np.sum(parts * parts * ratio / one_minus))


def phi_expansion(ld: LData, sigma, k: int = 0, strong: bool = False, strong_terms: int | None = None) -> mpf:
    """Small-sigma expansion of Phi (k = 0) or of (-1)^k Phi^(k) (k >= 1).

    Weak form keeps the pole at alpha and the double pole at 0. Strong form adds
    the poles at negative integers:
        k = 0:  sum_{m>=1} (-1)^m zeta(1-m) L(-m) sigma^m / m!
        k >= 1: sum_{m>=0} (-1)^m zeta(1-k-m) L(-k-m) sigma^m / m!

    Args:
        ld: L-data of the model
        sigma: positive real
        k: derivative order
        strong: include negative-integer poles
        strong_terms: number of negative-integer poles to include (default: all
            tabulated values)

    Raises:
        CapabilityError: strong form requested without tabulated L(-j)
    """
    sigma = mpf(sigma)
    alpha, A = ld.alpha, ld.residue_A
    zeta_main = riemann_zeta(1 + alpha)
    if k == 0:
        value = A * gamma(alpha) * zeta_main / sigma ** alpha - ld.L0 * log(sigma) + ld.L0_prime
    else:
        value = A * gamma(k + alpha) * zeta_main / sigma ** (alpha + k) + factorial(k - 1) * ld.L0 / sigma ** k
    if not strong:
        return value

    if ld.neg_values is None:
        raise CapabilityError("strong expansion needs L at negative integers, which this model does not supply")
    depth = max(-j for j in ld.neg_values)
    first = 1 if k == 0 else 0
    available = depth - k + 1 if k else depth
    count = available if strong_terms is None else min(strong_terms, available)
    for i in range(count):
        m = first + i
        j = k + m
        zeta_value = riemann_zeta(1 - j)
        if zeta_value == 0:
            continue
        value += (-1) ** m * zeta_value * ld.at_negative(j) * sigma ** m / factorial(m)
    return value
