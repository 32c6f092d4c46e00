import logging
from fractions import Fraction

from mpmath import mp, mpf, mpc, exp, pi, fabs

from src.utils.errors import ArgumentError, NumericError

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 200
RESIDUAL_TOLERANCE = mpf('1e-25')


def _trim(poly: list[Fraction]) -> list[Fraction]:
    """Drop leading zeros of a leading-first coefficient list."""
    i = 0
    while i < len(poly) - 1 and poly[i] == 0:
        i += 1
    return poly[i:]


def _derivative(poly: list[Fraction]) -> list[Fraction]:
    k = len(poly) - 1
    if k == 0:
        return [Fraction(0)]
    return [c * (k - i) for i, c in enumerate(poly[:-1])]


def _divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num = list(num)
    quotient = []
    while len(num) >= len(den):
        factor = num[0] / den[0]
        quotient.append(factor)
        for i, c in enumerate(den):
            num[i] -= factor * c
        num.pop(0)
    return quotient or [Fraction(0)], _trim(num) if num else [Fraction(0)]


def _gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while not (len(b) == 1 and b[0] == 0):
        _, r = _divmod(a, b)
        a, b = b, r
    return [c / a[0] for c in a]


def squarefree_parts(coeffs) -> list[tuple[list[Fraction], int]]:
    """Yun's decomposition f = c * prod g_i^i over the rationals.

    Returns:
        list of (monic square-free factor, multiplicity), constant factors dropped
    """
    f = _trim([Fraction(c) for c in coeffs])
    f = [c / f[0] for c in f]
    result = []
    df = _derivative(f)
    a = _gcd(f, df)
    b, _ = _divmod(f, a)
    c, _ = _divmod(df, a)
    d = _trim(_sub(c, _derivative(b)))
    multiplicity = 1
    while len(b) > 1:
        a = _gcd(b, d)
        if len(a) > 1:
            result.append((a, multiplicity))
        b, _ = _divmod(b, a)
        c, _ = _divmod(d, a)
        d = _trim(_sub(c, _derivative(b)))
        multiplicity += 1
    return result


def _pad(poly: list[Fraction], length: int) -> list[Fraction]:
    return [Fraction(0)] * (length - len(poly)) + list(poly)


def _sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    length = max(len(a), len(b))
    return [x - y for x, y in zip(_pad(a, length), _pad(b, length))]


def _horner(coeffs, z):
    """Value and derivative of a leading-first polynomial at z."""
    value = mpc(0)
    deriv = mpc(0)
    for c in coeffs:
        deriv = deriv * z + value
        value = value * z + c
    return value, deriv


def _aberth(coeffs: list[mpf], max_iterations: int) -> list[mpc]:
    """Aberth-Ehrlich iteration for a polynomial with simple roots."""
    k = len(coeffs) - 1
    if k == 1:
        return [mpc(-coeffs[1] / coeffs[0])]

    # Bini-style start: a circle with the geometric mean root modulus
    radius = (fabs(coeffs[-1]) / fabs(coeffs[0])) ** (mpf(1) / k)
    if radius == 0:
        radius = mpf(1)
    roots = [radius * exp(mpc(0, 2 * pi * j / k + mpf('0.4'))) for j in range(k)]

    tolerance = mpf(10) ** (-(mp.dps - 5))
    for iteration in range(max_iterations):
        deltas = []
        for i, z in enumerate(roots):
            value, deriv = _horner(coeffs, z)
            if value == 0:
                deltas.append(mpc(0))
                continue
            ratio = value / deriv
            repulsion = sum(1 / (z - w) for j, w in enumerate(roots) if j != i)
            deltas.append(ratio / (1 - ratio * repulsion))
        roots = [z - d for z, d in zip(roots, deltas)]
        worst = max(fabs(d) / max(1, fabs(z)) for d, z in zip(deltas, roots))
        if worst < tolerance:
            logger.debug(f"Aberth converged after {iteration + 1} iterations (degree {k})")
            return roots
    raise NumericError(f"Aberth iteration did not converge after {max_iterations} iterations (degree {k})")


def _pair_conjugates(roots: list[mpc]) -> list[mpc]:
    """Snap near-real roots to the real axis and enforce exact conjugate pairs."""
    snap = mpf(10) ** (-(mp.dps // 2))
    real, upper, lower = [], [], []
    for r in roots:
        if fabs(r.imag) <= snap * max(1, fabs(r)):
            real.append(mpc(r.real, 0))
        elif r.imag > 0:
            upper.append(r)
        else:
            lower.append(r)
    if len(upper) != len(lower):
        raise NumericError("complex roots of a real polynomial do not pair up")
    paired = []
    for u in upper:
        match = min(lower, key=lambda w: fabs(w - u.conjugate()))
        if fabs(match - u.conjugate()) > snap * max(1, fabs(u)):
            raise NumericError(f"no conjugate partner found for root {u}")
        lower.remove(match)
        mid = (u + match.conjugate()) / 2
        paired.extend([mid, mid.conjugate()])
    return real + paired


def polynomial_roots(coeffs, check_model: bool = False, max_iterations: int = MAX_ITERATIONS) -> list[mpc]:
    """All complex roots of a leading-first integer polynomial, with multiplicity.

    The polynomial is split into square-free factors first, so every Aberth run sees
    simple roots. Each root is checked against the original polynomial.

    Args:
        coeffs: a_0, ..., a_k with a_0 != 0 and k >= 1
        check_model: also enforce f(0) > 0, a_0 > 0 and no root at a non-negative
            integer, as required of a part-generating polynomial
        max_iterations: Aberth iteration cap per factor

    Returns:
        roots sorted by (real part, imaginary part)
    """
    coeffs = [int(c) for c in coeffs]
    if len(coeffs) < 2:
        raise ArgumentError(f"polynomial must have degree at least 1, got coefficients {coeffs}")
    if coeffs[0] == 0:
        raise ArgumentError(f"leading coefficient must be non-zero, got {coeffs}")
    if check_model:
        if coeffs[0] < 0:
            raise ArgumentError(f"leading coefficient must be positive for a part set, got {coeffs[0]}")
        if coeffs[-1] < 1:
            raise ArgumentError(f"f(0) = {coeffs[-1]} is not a positive integer")

    roots = []
    with mp.workdps(mp.dps + 20):
        for factor, multiplicity in squarefree_parts(coeffs):
            numeric = [mpf(c.numerator) / c.denominator for c in factor]
            found = _pair_conjugates(_aberth(numeric, max_iterations))
            roots.extend(r for r in found for _ in range(multiplicity))

        original = [mpf(c) for c in coeffs]
        for r in roots:
            value, _ = _horner(original, r)
            scale = sum(fabs(c) * max(1, fabs(r)) ** (len(coeffs) - 1 - i) for i, c in enumerate(original))
            if fabs(value) > RESIDUAL_TOLERANCE * scale:
                raise NumericError(f"root {r} fails the residual test (|f(r)| = {mp.nstr(fabs(value), 5)}, scale {mp.nstr(scale, 5)})")

    if len(roots) != len(coeffs) - 1:
        raise NumericError(f"found {len(roots)} roots for a degree {len(coeffs) - 1} polynomial")

    if check_model:
        for r in roots:
            if r.imag == 0 and r.real >= 0 and fabs(r.real - mp.nint(r.real)) < mpf(10) ** (-(mp.dps // 2)):
                raise ArgumentError(f"f vanishes at the non-negative integer {int(mp.nint(r.real))}")

    roots = [mpc(+r.real, +r.imag) for r in roots]
    return sorted(roots, key=lambda r: (r.real, r.imag))
