import logging
import math

from src.models.roots import polynomial_roots

logger = logging.getLogger(__name__)


def poly_value(coeffs: tuple[int, ...], n: int) -> int:
    """Exact f(n) for leading-first integer coefficients."""
    value = 0
    for c in coeffs:
        value = value * n + c
    return value


def monotone_from(coeffs: tuple[int, ...]) -> int:
    """Smallest n0 >= 0 past the largest real critical point of f.

    With a positive leading coefficient f is strictly increasing on [n0, inf).
    """
    k = len(coeffs) - 1
    if k <= 1:
        return 0
    deriv = [c * (k - i) for i, c in enumerate(coeffs[:-1])]
    critical = [r.real for r in polynomial_roots(deriv) if r.imag == 0]
    if not critical:
        return 0
    return max(0, math.floor(max(critical)) + 1)


def validate_polynomial(coeffs: tuple[int, ...]) -> tuple[bool, str | None]:
    """Check that f maps N injectively into the positive integers.

    Args:
        coeffs: leading-first integer coefficients a_0..a_k

    Returns:
        Tuple of (is_valid, error message | None)
    """
    if len(coeffs) < 2:
        return False, "polynomial needs degree at least 1"
    if coeffs[0] <= 0:
        return False, f"leading coefficient must be positive, got {coeffs[0]}"

    n0 = monotone_from(coeffs)
    values = [poly_value(coeffs, n) for n in range(n0 + 1)]
    peak = max(values)
    n = n0 + 1
    # past the first value above the whole prefix, f can no longer repeat
    while values[-1] <= peak:
        values.append(poly_value(coeffs, n))
        n += 1

    low = min(values)
    if low < 1:
        where = values.index(low)
        return False, f"f({where}) = {low} is not a positive integer"
    if len(set(values)) != len(values):
        seen = {}
        for i, v in enumerate(values):
            if v in seen:
                return False, f"f is not injective: f({seen[v]}) = f({i}) = {v}"
            seen[v] = i
    logger.debug(f"Polynomial {list(coeffs)} checked up to n = {n - 1} (monotone from {n0})")
    return True, None
