import logging
import math
from fractions import Fraction

from mpmath import mp, mpf, mpc, mpmathify, log, exp, pi, fabs, rf, factorial

from src.special.bernoulli import bernoulli, bernoulli_polynomial
from src.utils.errors import ArgumentError, PoleError

logger = logging.getLogger(__name__)

GUARD_DIGITS = 10


def _to_mp(x):
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpmathify(x)


def _nonpositive_integer(z) -> int | None:
    """Return -z when z is 0, -1, -2, ... and None otherwise."""
    if isinstance(z, (int, Fraction)):
        return int(-z) if z <= 0 and Fraction(z).denominator == 1 else None
    z = mpmathify(z)
    if isinstance(z, mpc):
        if z.imag != 0:
            return None
        z = z.real
    if z <= 0 and z == int(z):
        return int(-z)
    return None


def _is_real(z) -> bool:
    return isinstance(z, (int, Fraction)) or not isinstance(mpmathify(z), mpc)


def _stirling_threshold() -> float:
    # smallest term of the Stirling series is about exp(-2*pi*|z|)
    return max(15.0, 0.37 * (mp.dps + GUARD_DIGITS))


def log_gamma(z):
    """Principal-branch log Gamma via the Stirling series.

    The argument is shifted upward until Re z clears the Stirling threshold, and
    the principal logs of the shift factors are subtracted, so exp(log_gamma(z))
    always equals Gamma(z). Real z > 0 returns an mpf.

    Raises:
        PoleError: z is a non-positive integer
    """
    if _nonpositive_integer(z) is not None:
        raise PoleError(f"log_gamma has a pole at z = {z}")

    real_input = _is_real(z)
    with mp.workdps(mp.dps + GUARD_DIGITS):
        w = _to_mp(z)
        if not isinstance(w, mpc):
            w = mpc(w, 0)

        shift_log = mpc(0)
        threshold = _stirling_threshold()
        while w.real < threshold:
            shift_log += log(w)
            w += 1

        eps = mpf(10) ** (-(mp.dps + 2))
        value = (w - mpf(1) / 2) * log(w) - w + log(2 * pi) / 2
        cache = bernoulli(2)
        w_inv2 = 1 / (w * w)
        w_pow = 1 / w
        j = 1
        while True:
            if 2 * j > cache.upto:
                cache = bernoulli(4 * j)
            term = cache.as_mpf(2 * j) / (2 * j * (2 * j - 1)) * w_pow
            value += term
            if fabs(term) < eps * max(1, fabs(value)):
                break
            w_pow *= w_inv2
            j += 1
        value -= shift_log

    if real_input and _to_mp(z) > 0:
        return +value.real
    return mpc(+value.real, +value.imag)


def gamma(z):
    """Gamma(z) as exp(log_gamma(z)); real input gives a real result."""
    value = exp(log_gamma(z))
    if isinstance(value, mpc) and _is_real(z):
        return +value.real
    return value


def _bernoulli_zeta(m: int, a) -> mpf:
    """zeta(-m, a) = -B_{m+1}(a)/(m+1), exact for rational a."""
    value = -bernoulli_polynomial(m + 1, a) / (m + 1)
    return _to_mp(value)


def _exact_rational(a) -> Fraction | None:
    if isinstance(a, (int, Fraction)):
        return Fraction(a)
    return None


def hurwitz_zeta_general(s, a):
    """Hurwitz zeta for real s != 1 and any real a > 0.

    Non-positive integer s uses Bernoulli polynomials. Everything else runs
    Euler-Maclaurin: a direct sum over n < N, the integral and half-term
    corrections at N + a, then Bernoulli corrections until they drop below
    the working precision.
    """
    m = _nonpositive_integer(s)
    if m is not None:
        exact = _exact_rational(a)
        if exact == 1 and m > 0 and m % 2 == 0:
            return mpf(0)
        return _bernoulli_zeta(m, exact if exact is not None else _to_mp(a))

    s_mp = _to_mp(s)
    if s_mp == 1:
        raise PoleError("zeta(s, a) has a pole at s = 1")
    a_mp = _to_mp(a)
    if a_mp <= 0:
        raise ArgumentError(f"Hurwitz parameter must be positive, got {a}")

    n_terms = int(mp.dps + abs(float(s_mp)) + 10)
    # the direct sum grows like N^(1-s) for negative s and cancels against the tail
    guard = GUARD_DIGITS + int(max(0.0, -float(s_mp) + 1) * math.log10(n_terms + float(a_mp) + 1))
    with mp.workdps(mp.dps + guard):
        s_w = _to_mp(s)
        a_w = _to_mp(a)
        head = mp.fsum((n + a_w) ** (-s_w) for n in range(n_terms))
        x = n_terms + a_w
        tail = x ** (1 - s_w) / (s_w - 1) + x ** (-s_w) / 2

        eps = mpf(10) ** (-(mp.dps + 2))
        scale = max(fabs(head), fabs(tail))
        cache = bernoulli(2)
        x_pow = x ** (-s_w - 1)
        x_inv2 = 1 / (x * x)
        j = 1
        while j < 4 * n_terms:
            if 2 * j > cache.upto:
                cache = bernoulli(4 * j)
            term = cache.as_mpf(2 * j) / factorial(2 * j) * rf(s_w, 2 * j - 1) * x_pow
            tail += term
            if fabs(term) < eps * scale:
                break
            x_pow *= x_inv2
            j += 1
        else:
            logger.warning(f"Euler-Maclaurin corrections for zeta({s}, {a}) did not settle")
        value = head + tail
    return +value


def hurwitz_zeta(s, a):
    """zeta(s, a) for real s != 1 and 0 < a <= 1.

    Args:
        s: real exponent, s != 1
        a: shift parameter in (0, 1]; int, Fraction or mpmath real

    Returns:
        mpf value at the working precision; an exact zero at the trivial zeros
        of zeta(s, 1)
    """
    a_mp = _to_mp(a)
    if not (0 < a_mp <= 1):
        raise ArgumentError(f"hurwitz_zeta requires 0 < a <= 1, got {a}")
    if _to_mp(s) == 1:
        raise PoleError("hurwitz_zeta has a pole at s = 1")
    return hurwitz_zeta_general(s, a)


def riemann_zeta(s):
    """zeta(s) for real s != 1; exact values at non-positive integers."""
    m = _nonpositive_integer(s)
    if m is not None:
        if m > 0 and m % 2 == 0:
            return mpf(0)
        # (-1)^m B_{m+1}/(m+1) covers m = 0 under the B_1 = -1/2 convention
        b = bernoulli(m + 1)[m + 1]
        return _to_mp((-1) ** m * b / (m + 1))
    if _to_mp(s) == 1:
        raise PoleError("riemann_zeta has a pole at s = 1")
    return hurwitz_zeta_general(s, 1)


def zeta_deriv0() -> mpf:
    """zeta'(0) = -log(2 pi)/2."""
    return -log(2 * pi) / 2


def hurwitz_deriv0_general(a) -> mpf:
    """d/ds zeta(s, a) at s = 0 for any a > 0 (Lerch's formula)."""
    if _to_mp(a) <= 0:
        raise ArgumentError(f"Hurwitz parameter must be positive, got {a}")
    return log_gamma(a) - log(2 * pi) / 2


def hurwitz_deriv0(a) -> mpf:
    a_mp = _to_mp(a)
    if not (0 < a_mp <= 1):
        raise ArgumentError(f"hurwitz_deriv0 requires 0 < a <= 1, got {a}")
    return hurwitz_deriv0_general(a)