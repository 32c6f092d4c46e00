import logging
import math
from dataclasses import dataclass

import numpy as np
from mpmath import mp, mpf, exp, fabs, log

from src.models import LambdaSpec, format_spec, l_data, parts_up_to
from src.saddle.phi import phi
from src.saddle.solver import SaddleContext, saddle_estimate, solve_saddle
from src.utils.errors import ArgumentError, QuadratureError

logger = logging.getLogger(__name__)

MIN_QUAD_POINTS = 64
DEFAULT_MIN_POINTS = 256
PEAK_NODES = 16
ALIGNMENT = 64
DOUBLE_CUTOFF = 42.0
CHUNK_ELEMENTS = 1_000_000
IMAG_TOLERANCE = 1e-3


@dataclass(frozen=True)
class CauchyResult:
    """Trapezoid value of the Cauchy integral for p(n) on the circle |q| = exp(-rho)."""
    n: int
    value: mpf
    imag: mpf
    quad_points: int
    rho: mpf

    @property
    def rounded(self) -> int:
        return int(mp.nint(self.value))

    @property
    def deviation(self) -> mpf:
        """Distance from value to the nearest integer."""
        return fabs(self.value - mp.nint(self.value))

    @property
    def log_value(self) -> mpf:
        return log(self.value) if self.value > 0 else mp.ninf


def default_quad_points(
    ctx: SaddleContext,
    alpha,
    min_points: int = DEFAULT_MIN_POINTS,
    peak_nodes: int = PEAK_NODES,
    alias_floor: float = 0.01,
    alias_relative: float = 1e-10,
) -> int:
    """Node count resolving the Gaussian peak and suppressing aliases.

    The full-period trapezoid returns p(n) + sum_{l>=1} p(n + lN) exp(-rho l N), and the
    alias sum is below F(rho/2) exp(rho (n - N) / 2). N is the largest of min_points,
    peak_nodes * ceil(n^((alpha+2)/(2(alpha+1)))) and the smallest N pushing that bound
    under max(alias_floor, alias_relative * p_hat(n)), rounded up to a multiple of 64.
    """
    n = ctx.n
    alpha = float(alpha)
    peak = peak_nodes * math.ceil(n ** ((alpha + 2) / (2 * (alpha + 1))))
    log_target = max(math.log(alias_floor), math.log(alias_relative) + float(saddle_estimate(ctx.spec, n, ctx=ctx)))
    half = float(phi(ctx.spec, ctx.rho / 2))
    alias = n + 2 * (half - log_target) / float(ctx.rho)
    points = max(min_points, peak, math.ceil(alias))
    return -(-points // ALIGNMENT) * ALIGNMENT


def _node_sums(parts: np.ndarray, sigma: float, N: int, rows: np.ndarray) -> np.ndarray:
    """log(F(sigma + i t_j) / F(sigma)) for node indices j, t_j = -pi + 2 pi j / N.

    Each factor uses exact integer phases: m t_j = m pi - 2 pi ((m j) mod N) / N.
    """
    index = np.arange(N)
    sin_sq = np.sin(np.pi * index / N) ** 2
    cos_sq = np.cos(np.pi * index / N) ** 2
    sin_full = np.sin(2 * np.pi * index / N)

    m = parts.astype(np.int64)
    odd = (m % 2).astype(bool)
    x = np.exp(-sigma * parts)
    one_minus = -np.expm1(-sigma * parts)
    sign = np.where(odd, -1.0, 1.0)

    r = np.outer(rows, m) % N
    half_sq = np.where(odd, cos_sq[r], sin_sq[r])
    im_w = -sign * sin_full[r] * x
    real = -0.5 * np.log1p(4 * x * half_sq / one_minus ** 2)
    imag = np.arctan2(im_w, one_minus + 2 * x * half_sq)
    return real.sum(axis=1) + 1j * imag.sum(axis=1)


def cauchy_count(
    spec: LambdaSpec,
    n: int,
    quad_points: int | None = None,
    ctx: SaddleContext | None = None,
    double_cutoff: float = DOUBLE_CUTOFF,
    imag_tolerance: float = IMAG_TOLERANCE,
) -> CauchyResult:
    """p(n) from the trapezoid rule on (1/2 pi) int e^(rho n + i t n) F(rho + i t) dt.

    Nodes are evaluated relative to F(rho) in double precision and scaled back by
    exp(Phi(rho) + rho n) at the working precision.

    Args:
        spec: part-set model
        n: target, at least 1
        quad_points: node count, at least 64; default_quad_points when omitted
        ctx: solved saddle, computed when omitted

    Returns:
        CauchyResult

    Raises:
        QuadratureError: imaginary residue above imag_tolerance * max(|value|, 1)
    """
    if n < 1:
        raise ArgumentError(f"n must be at least 1, got {n}")
    ctx = ctx or solve_saddle(spec, n)
    if quad_points is None:
        quad_points = default_quad_points(ctx, l_data(spec).alpha)
    if quad_points < MIN_QUAD_POINTS:
        raise ArgumentError(f"quad_points must be at least {MIN_QUAD_POINTS}, got {quad_points}")

    N = int(quad_points)
    sigma = float(ctx.rho)
    parts = np.asarray(parts_up_to(spec, max(1, math.ceil(double_cutoff / sigma))), dtype=np.float64)
    rows_per_chunk = max(1, CHUNK_ELEMENTS // len(parts))

    turn = np.arange(N)
    n_phase = (-1.0) ** (n % 2) * np.exp(2j * np.pi * ((turn * n) % N) / N)
    total = 0j
    for start in range(0, N, rows_per_chunk):
        rows = turn[start:start + rows_per_chunk]
        sums = _node_sums(parts, sigma, N, rows)
        total += np.sum(np.exp(sums) * n_phase[rows])
    mean = total / N

    scale = exp(ctx.F_log + ctx.rho * n)
    value = scale * mpf(mean.real)
    imag = scale * mpf(mean.imag)
    logger.debug(f"Cauchy {format_spec(spec)} n = {n}: N = {N}, {len(parts)} parts, value {mp.nstr(value, 12)}")
    if fabs(imag) > imag_tolerance * max(fabs(value), 1):
        raise QuadratureError(
            f"imaginary residue {mp.nstr(imag, 5)} too large at n = {n} with {N} nodes; increase quad_points"
        )
    return CauchyResult(n=n, value=value, imag=imag, quad_points=N, rho=ctx.rho)
