import itertools
import logging
import math
from dataclasses import dataclass, field
from math import factorial

from mpmath import mp, mpf, fabs, log, pi

from src.asymptotics import rho_expansion
from src.models import LambdaSpec, LData, format_spec, l_data
from src.saddle.phi import parts_array, phi, phi_deriv, phi_derivs_float, truncation
from src.utils.errors import ArgumentError, NumericError

logger = logging.getLogger(__name__)

DOUBLE_CUTOFF = 40.0
RESIDUAL_TOLERANCE = 1e-9
MAX_NEWTON_STEPS = 100


@dataclass(frozen=True)
class SaddleContext:
    """Solved saddle point for (spec, n) with cached Phi derivatives."""
    spec: LambdaSpec
    n: int
    rho: mpf
    M_trunc: int
    phi2: mpf
    F_log: mpf
    residual: mpf
    iterations: int = 0
    _derivs: dict = field(default_factory=dict, compare=False, repr=False)

    def derivative(self, k: int) -> mpf:
        """Phi^(k)(rho), computed once per order."""
        if k == 2:
            return self.phi2
        if k not in self._derivs:
            self._derivs[k] = phi_deriv(self.spec, self.rho, k)
        return self._derivs[k]


def _bracket(parts_for, n: int, seed: float) -> tuple[float, float]:
    lo, hi = seed / 10, seed * 10
    for _ in range(20):
        g_lo = phi_derivs_float(parts_for(lo), lo)[0] - n
        g_hi = phi_derivs_float(parts_for(lo), hi)[0] - n
        if g_lo > 0 and g_hi < 0:
            return lo, hi
        if g_lo <= 0:
            lo /= 10
        if g_hi >= 0:
            hi *= 10
    raise NumericError(f"could not bracket the saddle point for n = {n}")


def solve_saddle(
    spec: LambdaSpec,
    n: int,
    ld: LData | None = None,
    double_cutoff: float = DOUBLE_CUTOFF,
    residual_tolerance: float = RESIDUAL_TOLERANCE,
) -> SaddleContext:
    """Solve -Phi'(rho) = n.

    Newton with a bisection safeguard runs in double precision on a bracket
    seeded by the saddle expansion; Phi(rho), Phi''(rho) and the residual are then
    evaluated at the working precision.

    Args:
        spec: part-set model
        n: target, at least 1
        ld: L-data, computed when omitted
        double_cutoff: double-precision sums keep parts m <= double_cutoff / sigma
        residual_tolerance: bound on |Phi'(rho) + n| / n

    Returns:
        SaddleContext
    """
    if n < 1:
        raise ArgumentError(f"n must be at least 1, got {n}")
    ld = ld or l_data(spec)

    seed = float(rho_expansion(ld, n))
    if seed <= 0:
        seed = float(rho_expansion(ld, n) - ld.L0 / ((1 + ld.alpha) * n))

    def parts_for(sigma: float):
        return parts_array(spec, math.ceil(double_cutoff / sigma))

    lo, hi = _bracket(parts_for, n, seed)
    parts = parts_for(lo)
    sigma = min(max(seed, lo), hi)
    steps = 0
    for steps in range(1, MAX_NEWTON_STEPS + 1):
        minus_d1, d2 = phi_derivs_float(parts, sigma)
        g = minus_d1 - n
        if g > 0:
            lo = sigma
        else:
            hi = sigma
        candidate = sigma + g / d2
        if not lo < candidate < hi:
            candidate = 0.5 * (lo + hi)
        converged = abs(candidate - sigma) <= 1e-15 * sigma
        sigma = candidate
        if converged:
            break
    logger.debug(f"Saddle for n = {n}: sigma = {sigma!r} after {steps} steps")

    rho = mpf(sigma)
    d1 = phi_deriv(spec, rho, 1)
    residual = fabs(d1 + n)
    if residual > residual_tolerance * n:
        raise NumericError(f"saddle residual {mp.nstr(residual, 5)} exceeds {residual_tolerance} * n for n = {n}")
    phi2 = phi_deriv(spec, rho, 2)
    if phi2 <= 0:
        raise NumericError(f"Phi''(rho) = {phi2} is not positive")

    return SaddleContext(
        spec=spec,
        n=n,
        rho=rho,
        M_trunc=truncation(rho),
        phi2=phi2,
        F_log=phi(spec, rho),
        residual=residual,
        iterations=steps,
        _derivs={1: d1},
    )


def derivative_tuples(level: int) -> list[tuple[int, ...]]:
    """Ordered tuples (m_1..m_h), m_i >= 3, with sum(m_i - 2) = 2 * level."""
    target = 2 * level
    tuples = []
    for h in range(1, target + 1):
        for excess in itertools.product(range(1, target + 1), repeat=h):
            if sum(excess) == target:
                tuples.append(tuple(e + 2 for e in excess))
    return tuples


def saddle_series(ctx: SaddleContext, K: int) -> mpf:
    """Gaussian-moment series around the saddle, relative to Phi''^(-1/2).

    Level j collects every product prod Phi^(m_i)/m_i! with sum(m_i - 2) = 2j,
    weighted by (1/h!) (-1)^r (2r)!/(2^r r!) Phi''^(-r) with 2r = sum m_i.
    """
    phi2 = ctx.phi2
    total = mpf(1)
    for level in range(1, K + 1):
        for orders in derivative_tuples(level):
            r = sum(orders) // 2
            product = mpf(1)
            for m in orders:
                product *= ctx.derivative(m) / factorial(m)
            moment = (-1) ** r * (factorial(2 * r) // (2 ** r * factorial(r)))
            total += product * moment / (factorial(len(orders)) * phi2 ** r)
    return total


def saddle_estimate(spec: LambdaSpec, n: int, K: int = 0, ctx: SaddleContext | None = None) -> mpf:
    """log of F(rho) e^(rho n) / sqrt(2 pi Phi''(rho)) times the level-K series.

    Args:
        spec: part-set model
        n: target
        K: number of correction levels, 0..2
        ctx: solved saddle, computed when omitted

    Returns:
        log-scale estimate of p(n)
    """
    if K not in (0, 1, 2):
        raise ArgumentError(f"K must be 0, 1 or 2, got {K}")
    ctx = ctx or solve_saddle(spec, n)
    base = ctx.F_log + ctx.rho * ctx.n - log(2 * pi * ctx.phi2) / 2
    if K == 0:
        return base
    series = saddle_series(ctx, K)
    if series <= 0:
        raise NumericError(f"saddle series for {format_spec(spec)} at n = {n} is not positive ({mp.nstr(series, 6)})")
    return base + log(series)
