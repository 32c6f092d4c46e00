import logging
from dataclasses import dataclass

from mpmath import mp, mpf, exp, log, sqrt, pi, inf

from src.models import LData
from src.special import gamma, riemann_zeta
from src.utils.errors import ArgumentError, CapabilityError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AsymConstants:
    """Main-term constants p(n) ~ b exp(c n^(alpha/(alpha+1))) / n^h and first corrections."""
    alpha: mpf
    frak_a: mpf
    frak_b: mpf
    frak_c: mpf
    frak_h: mpf
    gamma10: mpf
    gamma01: mpf | None = None
    class_d: bool = True

    @property
    def c1(self) -> mpf:
        """gamma10 + gamma01, the single first-order coefficient when alpha = 1."""
        return self.gamma10 + (self.gamma01 or 0)


@dataclass(frozen=True)
class Estimate:
    n: int
    order: int
    log_value: mpf
    value: mpf
    degraded: bool = False


def constants(ld: LData) -> AsymConstants:
    """Evaluate the main-term constants and the corrections gamma10, gamma01.

    gamma01 = a L(-1) / 2 is omitted when L(-1) is unknown.
    """
    alpha, A, L0 = ld.alpha, ld.residue_A, ld.L0
    if alpha <= 0 or A <= 0:
        raise ArgumentError(f"alpha and residue must be positive, got {alpha}, {A}")

    frak_a = (A * gamma(1 + alpha) * riemann_zeta(1 + alpha)) ** (1 / (alpha + 1))
    frak_b = exp(ld.L0_prime) * frak_a ** (mpf(1) / 2 - L0) / sqrt(2 * pi * (1 + alpha))
    frak_c = frak_a * (1 + 1 / alpha)
    frak_h = (1 - L0 + alpha / 2) / (alpha + 1)

    numerator = (
        -L0 ** 2
        + L0 * (alpha + 1)
        + (alpha + 3) * (alpha + 2) / 4
        - mpf(5) / 12 * (alpha + 2) ** 2
    )
    gamma10 = numerator / (2 * (1 + alpha) * frak_a)
    gamma01 = frak_a * ld.Lm1 / 2 if ld.Lm1 is not None else None

    return AsymConstants(
        alpha=alpha,
        frak_a=frak_a,
        frak_b=frak_b,
        frak_c=frak_c,
        frak_h=frak_h,
        gamma10=gamma10,
        gamma01=gamma01,
        class_d=ld.class_d,
    )


def correction(ac: AsymConstants, n: int) -> tuple[mpf, bool]:
    """First-order relative correction and whether gamma01 was missing."""
    n = mpf(n)
    value = ac.gamma10 * n ** (-ac.alpha / (ac.alpha + 1))
    if ac.gamma01 is None:
        return value, True
    return value + ac.gamma01 * n ** (-1 / (ac.alpha + 1)), False


def estimate(ac: AsymConstants, n: int, order: int = 0) -> Estimate:
    """log p(n) from the main term, optionally with the first correction.

    Args:
        ac: constants of the model
        n: target, at least 1
        order: 0 for the main term, 1 to add gamma10 and gamma01

    Returns:
        Estimate with log_value as the primary result
    """
    if n < 1:
        raise ArgumentError(f"n must be at least 1, got {n}")
    if order not in (0, 1):
        raise ArgumentError(f"order must be 0 or 1, got {order}")

    n_mp = mpf(n)
    log_value = ac.frak_c * n_mp ** (ac.alpha / (ac.alpha + 1)) - ac.frak_h * log(n_mp) + log(ac.frak_b)
    degraded = False
    if order == 1:
        corr, degraded = correction(ac, n)
        if degraded:
            logger.warning(f"gamma01 unavailable, order-1 estimate at n = {n} uses gamma10 only")
        if not ac.class_d:
            logger.warning("model is outside class D; order-1 correction is indicative only")
        if 1 + corr <= 0:
            logger.warning(f"order-1 correction {mp.nstr(corr, 6)} swamps the main term at n = {n}")
            return Estimate(n=n, order=order, log_value=-inf, value=mpf(0), degraded=True)
        log_value += log(1 + corr)
    return Estimate(n=n, order=order, log_value=log_value, value=exp(log_value), degraded=degraded)


def rho_expansion(ld: LData, n: int, terms: int = 2) -> mpf:
    """Saddle point expansion in powers of n.

    terms=2 gives a/n^(1/(1+alpha)) + L(0)/((1+alpha) n); terms 3 and 4 add the
    n^(-(2 alpha+1)/(1+alpha)) and n^(-(alpha+2)/(1+alpha)) coefficients.
    """
    if n < 1:
        raise ArgumentError(f"n must be at least 1, got {n}")
    if terms not in (2, 3, 4):
        raise ArgumentError(f"terms must be 2, 3 or 4, got {terms}")

    alpha, L0 = ld.alpha, ld.L0
    frak_a = (ld.residue_A * gamma(1 + alpha) * riemann_zeta(1 + alpha)) ** (1 / (alpha + 1))
    n = mpf(n)
    rho = frak_a / n ** (1 / (1 + alpha)) + L0 / ((1 + alpha) * n)
    if terms >= 3:
        c21 = alpha * L0 ** 2 / (2 * (1 + alpha) ** 2 * frak_a)
        rho += c21 / n ** ((2 * alpha + 1) / (1 + alpha))
    if terms >= 4:
        if ld.Lm1 is None:
            raise CapabilityError("the fourth saddle term needs L(-1)")
        c12 = riemann_zeta(0) * ld.Lm1 * frak_a / (1 + alpha)
        rho += c12 / n ** ((alpha + 2) / (1 + alpha))
    return rho
