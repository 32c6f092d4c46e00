import itertools
import logging
from functools import reduce
from math import gcd

from pydantic import BaseModel

from src.models.specs import (
    Classical,
    KPowerPlusSingleton,
    LambdaSpec,
    Polynomial,
    PowerAP,
    UnionAP,
    format_spec,
    iter_parts,
)
from src.utils.errors import AdmissibilityError

logger = logging.getLogger(__name__)

GCD_SCAN = 64


class AdmissibilityReport(BaseModel):
    """Conditions (a) and (g) for one part set."""
    gcd: int
    gcd_one: bool
    cond_g: bool
    witness: int | None = None

    def failing(self) -> list[str]:
        failed = []
        if not self.gcd_one:
            failed.append(f"condition (a): gcd of the parts is {self.gcd}")
        if not self.cond_g:
            failed.append(f"condition (g): only finitely many parts lie outside {self.witness}N (witness modulus {self.witness})")
        return failed


def _prime_factors(n: int) -> list[int]:
    primes = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    return primes


def _polynomial_condition_g(spec: Polynomial) -> tuple[bool, int | None]:
    # a prime p off f(0) always leaves n = 0 mod p outside pN
    for p in _prime_factors(spec.value(0)):
        if all(spec.value(n) % p == 0 for n in range(p)):
            return False, p
    return True, None


def _condition_g(spec: LambdaSpec) -> tuple[bool, int | None]:
    if isinstance(spec, (Classical, PowerAP)):
        return True, None
    if isinstance(spec, Polynomial):
        return _polynomial_condition_g(spec)
    if isinstance(spec, UnionAP):
        common = reduce(gcd, [x for pair in spec.progressions for x in pair])
        if common > 1:
            return False, _prime_factors(common)[0]
        return True, None
    if isinstance(spec, KPowerPlusSingleton):
        return False, spec.k
    raise AdmissibilityError(f"unknown model {spec!r}")


def check_admissible(spec: LambdaSpec, gcd_scan: int = GCD_SCAN) -> AdmissibilityReport:
    """Decide conditions (a) and (g) for a model.

    Args:
        spec: part-set model
        gcd_scan: number of leading parts whose gcd decides condition (a)

    Returns:
        AdmissibilityReport; never raises for a failing condition
    """
    parts = list(itertools.islice(iter_parts(spec), gcd_scan))
    common = reduce(gcd, parts)
    cond_g, witness = _condition_g(spec)
    report = AdmissibilityReport(gcd=common, gcd_one=common == 1, cond_g=cond_g, witness=witness)
    logger.debug(f"Admissibility of {format_spec(spec)}: {report}")
    return report


def require_admissible(spec: LambdaSpec, gcd_scan: int = GCD_SCAN) -> AdmissibilityReport:
    """Raise AdmissibilityError when condition (a) fails; (g) alone only warns."""
    report = check_admissible(spec, gcd_scan=gcd_scan)
    if not report.gcd_one:
        failed = report.failing()
        raise AdmissibilityError(
            f"{format_spec(spec)} is not admissible: " + "; ".join(failed),
            conditions=['a'] + ([] if report.cond_g else ['g']),
            witness=report.witness,
        )
    if not report.cond_g:
        logger.warning(f"{format_spec(spec)} fails condition (g) (witness {report.witness}); only the weak expansion applies")
    return report
