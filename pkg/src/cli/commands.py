import logging
import math

import numpy as np
from mpmath import mp, mpf, exp, log

from src.asymptotics import constants, estimate
from src.cli.config import RunConfig
from src.cli.output import (
    CauchyRow,
    CompareRow,
    EstimateRow,
    ExactRow,
    FitRow,
    VerifyRow,
    high_precision,
)
from src.models import Classical, LambdaSpec, check_admissible, counting_ratio, extra_pole_positions, l_data
from src.oracle import BigCountTable, convolution_residual, model_counts, pentagonal_counts
from src.saddle import (
    cauchy_count,
    check_periodicity,
    default_quad_points,
    saddle_estimate,
    solve_saddle,
    verify_arc_bound,
    verify_phi_expansion,
    verify_saddle_inversion,
)
from src.utils.errors import FitError, QuadratureError

logger = logging.getLogger(__name__)


def _counts(spec: LambdaSpec, n_max: int) -> BigCountTable:
    if isinstance(spec, Classical):
        return pentagonal_counts(n_max)
    return model_counts(spec, n_max)


def _log_count(count: int) -> mpf | None:
    return log(mpf(count)) if count > 0 else None


def _float(value) -> float | None:
    return None if value is None else float(value)


def _saddle(spec: LambdaSpec, n: int, ld, config: dict):
    saddle = config['saddle']
    return solve_saddle(
        spec, n, ld=ld, double_cutoff=saddle['double_cutoff'], residual_tolerance=saddle['residual_tolerance']
    )


def _quad_points(ctx, ld, cfg: RunConfig, config: dict) -> int:
    if cfg.quad_points:
        return cfg.quad_points
    saddle = config['saddle']
    return default_quad_points(ctx, ld.alpha, min_points=saddle['quad_min_points'], peak_nodes=saddle['quad_peak_nodes'])


def ladder(start: int, n_max: int) -> list[int]:
    """Doubling ladder start, 2 start, ... below n_max, closed by n_max itself."""
    values = []
    n = max(1, start)
    while n < n_max:
        values.append(n)
        n *= 2
    values.append(n_max)
    return values


def run_exact(cfg: RunConfig, config: dict) -> list[ExactRow]:
    table = _counts(cfg.spec, cfg.n_max)
    logger.info(f"Exact counts for {cfg.spec_text} up to {cfg.n_max} ({len(table.parts_used)} parts)")
    return [ExactRow(n=n, exact=str(count), log_exact=_float(_log_count(count))) for n, count in enumerate(table.counts)]


def run_estimate(cfg: RunConfig, config: dict) -> list[EstimateRow]:
    ld = l_data(cfg.spec, neg_depth=config['models']['neg_depth'])
    result = estimate(constants(ld), cfg.n, order=cfg.order)
    ctx = _saddle(cfg.spec, cfg.n, ld, config)
    log_saddle = saddle_estimate(cfg.spec, cfg.n, K=config['saddle']['series_levels'], ctx=ctx)
    return [EstimateRow(
        n=cfg.n,
        order=cfg.order,
        log_estimate=float(result.log_value),
        estimate=high_precision(result.value),
        log_saddle=float(log_saddle),
        degraded=result.degraded,
    )]


def run_cauchy(cfg: RunConfig, config: dict) -> list[CauchyRow]:
    ld = l_data(cfg.spec, neg_depth=config['models']['neg_depth'])
    ctx = _saddle(cfg.spec, cfg.n, ld, config)
    result = cauchy_count(cfg.spec, cfg.n, quad_points=_quad_points(ctx, ld, cfg, config), ctx=ctx)
    return [CauchyRow(
        n=cfg.n,
        value=high_precision(result.value),
        rounded=str(result.rounded),
        deviation=float(result.deviation),
        imag=float(result.imag),
        quad_points=result.quad_points,
        rho=float(result.rho),
    )]


def run_compare(cfg: RunConfig, config: dict) -> list[CompareRow]:
    """Exact counts against the order-0 and order-1 estimates and the Cauchy integral.

    Rows follow a doubling ladder up to n_max; ratio is exact / estimate at the
    configured order. The Cauchy column is filled up to compare.cauchy_max.
    """
    ld = l_data(cfg.spec, neg_depth=config['models']['neg_depth'])
    ac = constants(ld)
    table = _counts(cfg.spec, cfg.n_max)
    cauchy_max = config['compare']['cauchy_max']

    rows = []
    for n in ladder(config['compare']['ladder_start'], cfg.n_max):
        exact = table[n]
        log_exact = _log_count(exact)
        order0 = estimate(ac, n, order=0)
        order1 = estimate(ac, n, order=1)
        chosen = order1 if cfg.order == 1 else order0

        log_cauchy = None
        if n <= cauchy_max:
            ctx = _saddle(cfg.spec, n, ld, config)
            try:
                result = cauchy_count(cfg.spec, n, quad_points=_quad_points(ctx, ld, cfg, config), ctx=ctx)
                log_cauchy = result.log_value if result.value > 0 else None
            except QuadratureError as e:
                logger.warning(f"Cauchy column left empty at n = {n}: {e}")

        if log_exact is None:
            ratio = mpf(0)
        else:
            ratio = exp(log_exact - chosen.log_value)
        rows.append(CompareRow(
            n=n,
            exact=str(exact),
            log_exact=_float(log_exact),
            log_estimate_order0=float(order0.log_value),
            log_estimate_order1=_float(order1.log_value) if mp.isfinite(order1.log_value) else None,
            log_cauchy=_float(log_cauchy),
            ratio=high_precision(ratio),
        ))
        logger.info(f"compare {cfg.spec_text} n = {n}: ratio {mp.nstr(ratio, 8)}")
    return rows


def correction_exponents(alpha: float, count: int) -> list[float]:
    """Smallest distinct exponents (j alpha + h) / (alpha + 1), (j, h) != (0, 0)."""
    values = set()
    for j in range(count + 1):
        for h in range(count + 1):
            if j or h:
                values.add(round((j * alpha + h) / (alpha + 1), 12))
    return sorted(values)[:count]


def _closed_form_first(ac) -> float | None:
    """Closed-form coefficient of the leading correction exponent."""
    if ac.alpha < 1:
        return float(ac.gamma10)
    if ac.gamma01 is None:
        return None
    if ac.alpha > 1:
        return float(ac.gamma01)
    return float(ac.c1)


def run_fit(cfg: RunConfig, config: dict) -> list[FitRow]:
    """Least-squares fit of p(n) / main term - 1 on n^-e over the leading correction exponents.

    Raises:
        FitError: n_max below fit.min_nmax
    """
    fit = config['fit']
    if cfg.n_max < fit['min_nmax']:
        raise FitError(f"fit needs exact counts up to at least {fit['min_nmax']}, got n_max = {cfg.n_max}")

    ld = l_data(cfg.spec, neg_depth=config['models']['neg_depth'])
    ac = constants(ld)
    table = _counts(cfg.spec, cfg.n_max)

    start = max(fit['min_n'], cfg.n_max // fit['window_divisor'])
    ns = np.unique(np.geomspace(start, cfg.n_max, fit['points']).astype(np.int64))
    ns = [int(n) for n in ns if table[int(n)] > 0]
    if len(ns) <= fit['basis_size']:
        raise FitError(f"only {len(ns)} usable points in [{start}, {cfg.n_max}]")

    alpha = float(ac.alpha)
    exponents = correction_exponents(alpha, fit['basis_size'])
    y = np.array([float(exp(log(mpf(table[n])) - estimate(ac, n, order=0).log_value) - 1) for n in ns])
    design = np.array([[n ** -e for e in exponents] for n in ns], dtype=np.float64)

    scale = np.abs(design).max(axis=0)
    coefficients, _, rank, _ = np.linalg.lstsq(design / scale, y, rcond=None)
    if rank < len(exponents):
        raise FitError(f"fit basis is rank deficient ({rank} < {len(exponents)})")
    coefficients = coefficients / scale

    residual = y - design @ coefficients
    dof = len(ns) - len(exponents)
    variance = float(residual @ residual) / dof
    covariance = variance * np.linalg.inv(design.T @ design)
    stderr = np.sqrt(np.abs(np.diag(covariance)))

    closed = _closed_form_first(ac)
    rows = []
    for term, (e, c, s) in enumerate(zip(exponents, coefficients, stderr), start=1):
        reference = closed if term == 1 else None
        relative = abs(c / reference - 1) if reference else None
        rows.append(FitRow(
            term=term,
            exponent=e,
            coefficient=float(c),
            stderr=float(s),
            closed_form=reference,
            relative_error=relative,
        ))
    logger.info(f"fit {cfg.spec_text}: c1_hat = {coefficients[0]:.6g} +- {stderr[0]:.2g} (closed form {closed})")
    return rows


def weak_epsilon(spec: LambdaSpec, epsilon: float) -> float:
    """Weak-mode decay order, halved below the nearest extra pole of a polynomial L."""
    poles = extra_pole_positions(spec, r_max=1)
    if not poles:
        return epsilon
    capped = min(epsilon, float(-max(poles)) / 2)
    if capped < epsilon:
        logger.info(f"Weak epsilon lowered to {capped:.3f}: L has a pole at {float(max(poles)):.3f}")
    return capped


def run_verify(cfg: RunConfig, config: dict) -> list[VerifyRow]:
    """Structural and numerical checks for one model, one row per check."""
    spec = cfg.spec
    verify = config['verify']
    rows = []

    report = check_admissible(spec, gcd_scan=config['models']['gcd_scan'])
    rows.append(VerifyRow(check='admissible_a', passed=report.gcd_one, value=report.gcd, bound=1, detail='gcd of the parts'))
    rows.append(VerifyRow(
        check='condition_g',
        passed=report.cond_g,
        value=report.witness,
        bound=None,
        detail='witness modulus' if report.witness else 'holds',
    ))

    ld = l_data(spec, neg_depth=config['models']['neg_depth'])
    convolution = convolution_residual(spec, ld.alpha + 1, verify['convolution_N'], data=ld)
    rows.append(VerifyRow(
        check='convolution',
        passed=convolution['passed'],
        value=float(convolution['residual']),
        bound=float(convolution['bound']),
        detail=f"N = {convolution['N']}, z = alpha + 1",
    ))

    ratio = counting_ratio(spec, verify['counting_x'], data=ld)
    rows.append(VerifyRow(
        check='counting',
        passed=bool(abs(ratio - 1) < verify['counting_tolerance']),
        value=float(ratio),
        bound=verify['counting_tolerance'],
        detail=f"x = {verify['counting_x']}",
    ))

    low, high = verify['sigma_exponents']
    sigmas = [mpf(2) ** -j for j in range(low, high + 1)]
    epsilon = weak_epsilon(spec, verify['epsilon'])
    weak = verify_phi_expansion(spec, sigmas, strong=False, epsilon=epsilon, ld=ld)
    rows.append(VerifyRow(
        check='phi_expansion_weak', passed=weak.passed, value=weak.slope, bound=epsilon, detail='decay slope'
    ))
    if ld.neg_values is not None:
        strong = verify_phi_expansion(spec, sigmas, strong=True, strong_terms=verify['strong_terms'], ld=ld)
        rows.append(VerifyRow(
            check='phi_expansion_strong',
            passed=strong.passed,
            value=_finite_or_none(strong.slope),
            bound=verify['strong_terms'] + 1,
            detail='decay slope' if math.isfinite(strong.slope) else 'residual below working precision',
        ))
    else:
        logger.info(f"{cfg.spec_text} has no L at negative integers; strong expansion skipped")

    for row in verify_saddle_inversion(spec, verify['inversion_n'], ld=ld):
        rows.append(VerifyRow(
            check='saddle_inversion', passed=row.passed, value=row.difference, bound=row.bound, detail=f"n = {row.n}"
        ))

    arc_n = cfg.n or config['saddle']['arc_n']
    arc = verify_arc_bound(spec, arc_n, grid=config['saddle']['arc_grid'], ld=ld)
    rows.append(VerifyRow(
        check='arc_bound',
        passed=arc.passed,
        value=arc.minor_max,
        bound=arc.rho,
        detail=f"n = {arc_n}, integral / rho^2 = {arc.constant:.6g}",
    ))

    periodic = check_periodicity(spec)
    rows.append(VerifyRow(
        check='periodicity', passed=periodic.passed, value=periodic.difference, bound=None, detail=f"sigma = {periodic.sigma}"
    ))
    return rows


def _finite_or_none(value: float) -> float | None:
    return value if math.isfinite(value) else None


COMMAND_RUNNERS = {
    'exact': (run_exact, ExactRow),
    'estimate': (run_estimate, EstimateRow),
    'cauchy': (run_cauchy, CauchyRow),
    'compare': (run_compare, CompareRow),
    'fit': (run_fit, FitRow),
    'verify': (run_verify, VerifyRow),
}
