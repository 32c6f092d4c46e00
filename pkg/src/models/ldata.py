import itertools
import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction

from mpmath import mp, mpf, log, fabs

from src.models.admissibility import require_admissible
from src.models.roots import polynomial_roots
from src.models.specs import (
    Classical,
    KPowerPlusSingleton,
    LambdaSpec,
    Polynomial,
    PowerAP,
    UnionAP,
    format_spec,
    parts_up_to,
)
from src.special import hurwitz_deriv0_general, hurwitz_zeta_general, log_gamma, riemann_zeta, zeta_deriv0
from src.utils.errors import ArgumentError, PoleError

logger = logging.getLogger(__name__)

NEG_DEPTH = 12
MIN_HEAD_TERMS = 50
DEPTH_MARGIN = 30


@dataclass(frozen=True)
class LData:
    """Analytic data of L(z) = sum over parts m of m^-z."""
    alpha: mpf
    residue_A: mpf
    L0: mpf
    L0_prime: mpf
    Lm1: mpf | None = None
    neg_values: dict[int, mpf] | None = None
    Lm1_numeric: bool = False
    class_d: bool = True

    def __post_init__(self):
        if self.alpha <= 0 or self.residue_A <= 0:
            raise ArgumentError(f"alpha and residue must be positive, got {self.alpha}, {self.residue_A}")

    def at_negative(self, j: int) -> mpf | None:
        """L(-j) when known."""
        if self.neg_values is not None and -j in self.neg_values:
            return self.neg_values[-j]
        if j == 1:
            return self.Lm1
        return None


def _fraction_mp(x: Fraction) -> mpf:
    return mpf(x.numerator) / x.denominator


# Shifted progression c + d N: L(z) = d^-z zeta(z, c/d)

def _progression_data(c: int, d: int, neg_depth: int) -> dict:
    x = Fraction(c, d)
    L0 = hurwitz_zeta_general(0, x)
    return {
        'residue': mpf(1) / d,
        'L0': L0,
        'L0_prime': hurwitz_deriv0_general(_fraction_mp(x)) - log(d) * L0,
        'neg': {-j: mpf(d) ** j * hurwitz_zeta_general(-j, x) for j in range(1, neg_depth + 1)},
    }


def _intersect(first: tuple[int, int], second: tuple[int, int]) -> tuple[int, int] | None:
    """Intersection of two progressions as (smallest element, modulus), or None."""
    (a1, q1), (a2, q2) = first, second
    g = math.gcd(q1, q2)
    if (a2 - a1) % g:
        return None
    modulus = q1 // g * q2
    step = ((a2 - a1) // g * pow(q1 // g, -1, q2 // g)) % (q2 // g) if q2 // g > 1 else 0
    residue = (a1 + q1 * step) % modulus
    start = max(a1, a2)
    smallest = start + (residue - start) % modulus
    return smallest, modulus


def union_terms(spec: UnionAP) -> list[tuple[int, int, int]]:
    """Inclusion-exclusion terms (sign, start, modulus) for a union of progressions."""
    terms = []
    for size in range(1, len(spec.progressions) + 1):
        sign = 1 if size % 2 else -1
        for subset in itertools.combinations(spec.progressions, size):
            current = subset[0]
            for other in subset[1:]:
                current = _intersect(current, other)
                if current is None:
                    break
            if current is not None:
                terms.append((sign, current[0], current[1]))
    return terms


def _power_ap_data(spec: PowerAP, neg_depth: int) -> LData:
    a, q, k = spec.a, spec.q, spec.k
    x = Fraction(a, q)
    L0 = hurwitz_zeta_general(0, x)
    L0_prime = k * hurwitz_deriv0_general(_fraction_mp(x)) - k * log(q) * L0
    neg = {-j: mpf(q) ** (j * k) * hurwitz_zeta_general(-j * k, x) for j in range(1, neg_depth + 1)}
    return LData(
        alpha=mpf(1) / k,
        residue_A=mpf(1) / (q * k),
        L0=L0,
        L0_prime=L0_prime,
        Lm1=neg[-1],
        neg_values=neg,
    )


def _polynomial_data(spec: Polynomial) -> LData:
    coeffs = spec.coeffs
    k = spec.degree
    a0, a1 = coeffs[0], coeffs[1]
    roots = polynomial_roots(coeffs, check_model=True)
    L0 = mpf(1) / 2 - mpf(a1) / (a0 * k)
    root_sum = sum(log_gamma(-r) for r in roots)
    L0_prime = -L0 * log(a0) - k * log(2 * mp.pi) / 2 + mp.re(root_sum)
    Lm1 = l_eval(spec, -1)
    logger.warning(f"L(-1) for {format_spec(spec)} comes from numerical continuation")
    return LData(
        alpha=mpf(1) / k,
        residue_A=1 / (k * mpf(a0) ** (mpf(1) / k)),
        L0=L0,
        L0_prime=L0_prime,
        Lm1=Lm1,
        neg_values=None,
        Lm1_numeric=True,
    )


def _union_data(spec: UnionAP, neg_depth: int) -> LData:
    residue, L0, L0_prime = mpf(0), mpf(0), mpf(0)
    neg = {-j: mpf(0) for j in range(1, neg_depth + 1)}
    for sign, c, d in union_terms(spec):
        term = _progression_data(c, d, neg_depth)
        residue += sign * term['residue']
        L0 += sign * term['L0']
        L0_prime += sign * term['L0_prime']
        for key, value in term['neg'].items():
            neg[key] += sign * value
    return LData(alpha=mpf(1), residue_A=residue, L0=L0, L0_prime=L0_prime, Lm1=neg[-1], neg_values=neg)


def _singleton_data(spec: KPowerPlusSingleton, neg_depth: int) -> LData:
    k, a = spec.k, spec.a
    neg = {-j: mpf(k) ** j * riemann_zeta(-j) + mpf(a) ** j for j in range(1, neg_depth + 1)}
    return LData(
        alpha=mpf(1),
        residue_A=mpf(1) / k,
        L0=riemann_zeta(0) + 1,
        L0_prime=-log(k) * riemann_zeta(0) + zeta_deriv0() - log(a),
        Lm1=neg[-1],
        neg_values=neg,
        class_d=False,
    )


def l_data(spec: LambdaSpec, neg_depth: int = NEG_DEPTH) -> LData:
    """Residue, L(0), L'(0), L(-1) and L at negative integers for a model.

    Args:
        spec: part-set model, must satisfy condition (a)
        neg_depth: number of values L(-1), ..., L(-neg_depth) to tabulate when
            they are available in closed form

    Returns:
        LData at the working precision

    Raises:
        AdmissibilityError: condition (a) fails
    """
    report = require_admissible(spec)

    if isinstance(spec, Classical):
        neg = {-j: riemann_zeta(-j) for j in range(1, neg_depth + 1)}
        data = LData(alpha=mpf(1), residue_A=mpf(1), L0=riemann_zeta(0), L0_prime=zeta_deriv0(), Lm1=neg[-1], neg_values=neg)
    elif isinstance(spec, PowerAP):
        data = _power_ap_data(spec, neg_depth)
    elif isinstance(spec, Polynomial):
        data = _polynomial_data(spec)
    elif isinstance(spec, UnionAP):
        data = _union_data(spec, neg_depth)
    elif isinstance(spec, KPowerPlusSingleton):
        data = _singleton_data(spec, neg_depth)
    else:
        raise ArgumentError(f"unknown model {spec!r}")

    if not report.cond_g and data.class_d:
        data = replace(data, class_d=False)
    logger.debug(f"L-data for {format_spec(spec)}: alpha={data.alpha}, A={data.residue_A}, L(0)={data.L0}")
    return data


def _binomial_series(p: list[mpf], beta: mpf, depth: int) -> tuple[list[mpf], list[mpf]]:
    """Coefficients of (1 + sum_j p_j x^j)^beta and their beta-derivatives.

    p[0] is unused; the recurrence is i q_i = sum_j ((beta + 1) j - i) p_j q_{i-j}.
    """
    k = len(p) - 1
    q = [mpf(1)]
    dq = [mpf(0)]
    for i in range(1, depth + 1):
        value = mpf(0)
        deriv = mpf(0)
        for j in range(1, min(i, k) + 1):
            weight = (beta + 1) * j - i
            value += weight * p[j] * q[i - j]
            deriv += j * p[j] * q[i - j] + weight * p[j] * dq[i - j]
        q.append(value / i)
        dq.append(deriv / i)
    return q, dq


def _root_bound(coeffs: tuple[int, ...]) -> float:
    return 1 + max(abs(c) / coeffs[0] for c in coeffs[1:])


def _polynomial_eval(spec: Polynomial, z, head_terms: int | None = None, depth: int | None = None) -> mpf:
    coeffs = spec.coeffs
    k = spec.degree
    z = mpf(z)
    if fabs(k * z - 1) < mpf(10) ** (-(mp.dps - 5)):
        raise PoleError(f"L has its main pole at z = 1/{k}")

    bound = _root_bound(coeffs)
    if head_terms is None:
        head_terms = max(MIN_HEAD_TERMS, math.ceil(10 * (1 + k * abs(float(z)))), math.ceil(10 * bound))
    if depth is None:
        depth = math.ceil(1 + k * abs(float(z))) + DEPTH_MARGIN

    guard = 15 + int((k * abs(float(z)) + 1) * math.log10(head_terms + 1))
    with mp.workdps(mp.dps + guard):
        z_w = mpf(z)
        head = mp.fsum(mpf(spec.value(n)) ** (-z_w) for n in range(head_terms + 1))

        p = [mpf(1)] + [mpf(c) / coeffs[0] for c in coeffs[1:]]
        series, series_deriv = _binomial_series(p, -z_w, depth)
        scale = max(fabs(c) for c in series)
        tiny = mpf(10) ** (-(mp.dps - guard - 5))

        tail = mpf(0)
        for i, c in enumerate(series):
            s = k * z_w + i
            if fabs(s - 1) < tiny:
                if fabs(c) > tiny * scale:
                    raise PoleError(f"L for {format_spec(spec)} has a pole at z = {mp.nstr(z, 10)}")
                # C_i(z) (k(z - z0))^-1 tends to C_i'(z0)/k; d/dz = -d/dbeta
                tail += -series_deriv[i] / k
                continue
            tail += c * hurwitz_zeta_general(s, head_terms + 1)
        value = head + mpf(coeffs[0]) ** (-z_w) * tail
    return +value


def l_eval(spec: LambdaSpec, z, head_terms: int | None = None, depth: int | None = None) -> mpf:
    """Analytic continuation of L(z) to real z.

    Args:
        spec: part-set model
        z: real evaluation point, not a pole
        head_terms: polynomial models only, number M of terms summed directly
        depth: polynomial models only, number J of binomial tail terms

    Raises:
        PoleError: z is the main pole or a polynomial pole at -r/k
    """
    if isinstance(spec, Classical):
        return riemann_zeta(z)
    if isinstance(spec, PowerAP):
        s = spec.k * mpf(z)
        if fabs(s - 1) < mpf(10) ** (-(mp.dps - 5)):
            raise PoleError(f"L has its main pole at z = 1/{spec.k}")
        return mpf(spec.q) ** (-s) * hurwitz_zeta_general(s, Fraction(spec.a, spec.q))
    if isinstance(spec, Polynomial):
        return _polynomial_eval(spec, z, head_terms=head_terms, depth=depth)
    if isinstance(spec, UnionAP):
        if fabs(mpf(z) - 1) < mpf(10) ** (-(mp.dps - 5)):
            raise PoleError("L has its main pole at z = 1")
        return mp.fsum(
            sign * mpf(d) ** (-mpf(z)) * hurwitz_zeta_general(z, Fraction(c, d))
            for sign, c, d in union_terms(spec)
        )
    if isinstance(spec, KPowerPlusSingleton):
        return mpf(spec.k) ** (-mpf(z)) * riemann_zeta(z) + mpf(spec.a) ** (-mpf(z))
    raise ArgumentError(f"unknown model {spec!r}")


def extra_pole_positions(spec: LambdaSpec, r_max: int = 12) -> list[mpf]:
    """Poles of a polynomial L at z = -r/k, k not dividing r, for r <= r_max.

    Only positions are reported. Other families have no poles besides alpha.
    """
    if not isinstance(spec, Polynomial):
        return []
    k = spec.degree
    coeffs = spec.coeffs
    p = [mpf(1)] + [mpf(c) / coeffs[0] for c in coeffs[1:]]
    positions = []
    for r in range(1, r_max + 1):
        if r % k == 0:
            continue
        z0 = -mpf(r) / k
        series, _ = _binomial_series(p, -z0, r + 1)
        if fabs(series[r + 1]) > mpf(10) ** (-(mp.dps - 10)):
            positions.append(z0)
    return positions


def counting_ratio(spec: LambdaSpec, x: int, data: LData | None = None) -> mpf:
    """|parts <= x| divided by (A/alpha) x^alpha."""
    data = data or l_data(spec)
    count = len(parts_up_to(spec, x))
    return count / (data.residue_A / data.alpha * mpf(x) ** data.alpha)
