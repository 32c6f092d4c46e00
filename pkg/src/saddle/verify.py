import logging
import math

import numpy as np
from mpmath import mp, mpf, mpc, fabs, pi
from pydantic import BaseModel

from src.asymptotics import rho_expansion
from src.models import LambdaSpec, LData, format_spec, l_data, parts_up_to
from src.saddle.phi import phi, phi_expansion
from src.saddle.solver import SaddleContext, solve_saddle
from src.utils.errors import ArgumentError, CapabilityError

logger = logging.getLogger(__name__)

ARC_BETA_DIVISOR = 2.4
MIN_ARC_GRID = 1000
DOUBLE_CUTOFF = 42.0
CHUNK_ELEMENTS = 1_000_000
INVERSION_EXPONENT = 1.05


class ExpansionRow(BaseModel):
    sigma: float
    direct: float
    expansion: float
    residual: float
    scaled: float


class ExpansionReport(BaseModel):
    spec: str
    strong: bool
    epsilon: float
    slope: float
    rows: list[ExpansionRow]
    passed: bool


class ArcReport(BaseModel):
    spec: str
    n: int
    rho: float
    beta: float
    grid: int
    max_ratio: float
    minor_max: float
    first_ratio: float
    integral: float
    constant: float
    passed: bool


class InversionRow(BaseModel):
    n: int
    rho: float
    expansion: float
    difference: float
    bound: float
    passed: bool


class PeriodicityReport(BaseModel):
    spec: str
    sigma: float
    difference: float
    passed: bool


def verify_phi_expansion(
    spec: LambdaSpec,
    sigma_list,
    strong: bool = False,
    strong_terms: int = 2,
    epsilon: float = 0.5,
    ld: LData | None = None,
) -> ExpansionReport:
    """Compare direct Phi(sigma) with its small-sigma expansion.

    The decay order is the least-squares slope of log residual against log sigma,
    fitted on residuals above the working-precision floor. Weak mode passes when
    the slope reaches epsilon; strong mode when it reaches strong_terms + 1.

    Raises:
        CapabilityError: strong mode for a model without L at negative integers
    """
    ld = ld or l_data(spec)
    if strong and ld.neg_values is None:
        raise CapabilityError(f"strong expansion of {format_spec(spec)} needs L at negative integers")
    if len(sigma_list) < 2:
        raise ArgumentError("at least two sigma values are needed to estimate a decay order")

    rows = []
    fit_x, fit_y = [], []
    for sigma in sorted(sigma_list, reverse=True):
        sigma = mpf(sigma)
        direct = phi(spec, sigma)
        expansion = phi_expansion(ld, sigma, strong=strong, strong_terms=strong_terms if strong else None)
        residual = fabs(direct - expansion)
        rows.append(ExpansionRow(
            sigma=float(sigma),
            direct=float(direct),
            expansion=float(expansion),
            residual=float(residual),
            scaled=float(residual / sigma ** epsilon),
        ))
        floor = mpf(10) ** (10 - mp.dps) * fabs(direct)
        if residual > floor:
            fit_x.append(math.log(float(sigma)))
            fit_y.append(float(mp.log(residual)))

    slope = float(np.polyfit(fit_x, fit_y, 1)[0]) if len(fit_x) >= 2 else math.inf
    required = strong_terms + 1 if strong else epsilon
    passed = slope >= required
    mode = "strong" if strong else "weak"
    logger.info(f"Phi expansion ({mode}) for {format_spec(spec)}: slope {slope:.3f}, required {required}")
    return ExpansionReport(
        spec=format_spec(spec), strong=strong, epsilon=epsilon, slope=slope, rows=rows, passed=passed
    )


def log_modulus_ratio(spec: LambdaSpec, sigma: float, t: np.ndarray, double_cutoff: float = DOUBLE_CUTOFF) -> np.ndarray:
    """log |F(sigma + i t)| - log F(sigma) on an array of t, in double precision."""
    parts = np.asarray(parts_up_to(spec, max(1, math.ceil(double_cutoff / sigma))), dtype=np.float64)
    x = np.exp(-sigma * parts)
    weight = 4 * x / np.expm1(-sigma * parts) ** 2
    rows = max(1, CHUNK_ELEMENTS // len(parts))
    out = np.empty(len(t))
    for start in range(0, len(t), rows):
        block = t[start:start + rows]
        half_sq = np.sin(np.outer(block, parts) / 2) ** 2
        out[start:start + rows] = -0.5 * np.log1p(weight * half_sq).sum(axis=1)
    return out


def verify_arc_bound(spec: LambdaSpec, n: int, grid: int = 2000, ctx: SaddleContext | None = None, ld: LData | None = None) -> ArcReport:
    """Scan |F(rho + i t)| / F(rho) over rho^beta <= t <= pi.

    beta = 1 + alpha / 2.4. Reports the maximum over the whole scan and over the
    minor-arc range [2 pi rho, pi], and 2 int |F(rho + i t)| / F(rho) dt by the
    trapezoid rule on a geometric grid, also divided by rho^2. The check passes
    when the minor-arc maximum is below rho.
    """
    if grid < MIN_ARC_GRID:
        raise ArgumentError(f"arc grid needs at least {MIN_ARC_GRID} points, got {grid}")
    ld = ld or l_data(spec)
    ctx = ctx or solve_saddle(spec, n, ld=ld)
    rho = float(ctx.rho)
    beta = 1 + float(ld.alpha) / ARC_BETA_DIVISOR
    start = rho ** beta
    if start >= math.pi:
        raise ArgumentError(f"n = {n} is too small for an arc scan (rho^beta = {start:.3g})")

    t = np.geomspace(start, math.pi, grid)
    ratio = np.exp(log_modulus_ratio(spec, rho, t))
    minor = t >= 2 * math.pi * rho
    minor_max = float(ratio[minor].max()) if minor.any() else 0.0
    integral = 2 * float(np.sum(0.5 * (ratio[1:] + ratio[:-1]) * np.diff(t)))
    constant = integral / rho ** 2
    passed = minor_max < rho
    logger.info(
        f"Arc scan {format_spec(spec)} n = {n}: minor max {minor_max:.3e}, integral / rho^2 = {constant:.4g}"
    )
    return ArcReport(
        spec=format_spec(spec),
        n=n,
        rho=rho,
        beta=beta,
        grid=grid,
        max_ratio=float(ratio.max()),
        minor_max=minor_max,
        first_ratio=float(ratio[0]),
        integral=integral,
        constant=constant,
        passed=passed,
    )


def verify_saddle_inversion(spec: LambdaSpec, n_values, exponent: float = INVERSION_EXPONENT, ld: LData | None = None) -> list[InversionRow]:
    """Solved saddle against the two-term expansion; passes when they differ by less than n^-exponent."""
    ld = ld or l_data(spec)
    rows = []
    for n in n_values:
        ctx = solve_saddle(spec, n, ld=ld)
        expansion = rho_expansion(ld, n)
        difference = fabs(ctx.rho - expansion)
        bound = mpf(n) ** -exponent
        rows.append(InversionRow(
            n=n,
            rho=float(ctx.rho),
            expansion=float(expansion),
            difference=float(difference),
            bound=float(bound),
            passed=bool(difference < bound),
        ))
        logger.debug(f"Saddle inversion n = {n}: |rho - expansion| = {mp.nstr(difference, 5)}")
    return rows


def check_periodicity(spec: LambdaSpec, sigma=0.5, tolerance=None) -> PeriodicityReport:
    """F(sigma + i pi) = F(sigma - i pi) for integer parts."""
    sigma = mpf(sigma)
    tolerance = tolerance or mpf(10) ** (10 - mp.dps)
    upper = phi(spec, mpc(sigma, pi))
    lower = phi(spec, mpc(sigma, -pi))
    difference = fabs(upper - lower)
    return PeriodicityReport(
        spec=format_spec(spec),
        sigma=float(sigma),
        difference=float(difference),
        passed=bool(difference <= tolerance * max(1, fabs(upper))),
    )
