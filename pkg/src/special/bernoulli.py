from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from mpmath import mpf

from src.utils.errors import ArgumentError


@dataclass(frozen=True)
class BernoulliCache:
    """Exact Bernoulli numbers B_0..B_upto (B_1 = -1/2 convention)."""
    values: tuple[Fraction, ...]

    @property
    def upto(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, index: int) -> Fraction:
        return self.values[index]

    def as_mpf(self, index: int) -> mpf:
        b = self.values[index]
        return mpf(b.numerator) / b.denominator


@lru_cache(maxsize=None)
def _bernoulli_number(m: int) -> Fraction:
    if m == 0:
        return Fraction(1)
    if m > 1 and m % 2 == 1:
        return Fraction(0)
    total = sum(comb(m + 1, j) * _bernoulli_number(j) for j in range(m))
    return -total / (m + 1)


def bernoulli(upto: int) -> BernoulliCache:
    """Build the table B_0..B_upto by the standard recurrence.

    Args:
        upto: highest index, at least 0

    Returns:
        BernoulliCache with exact rationals
    """
    if upto < 0:
        raise ArgumentError(f"bernoulli table size must be non-negative, got {upto}")
    # fill the cache bottom-up so the recursion stays shallow
    for m in range(upto + 1):
        _bernoulli_number(m)
    return BernoulliCache(values=tuple(_bernoulli_number(m) for m in range(upto + 1)))


def bernoulli_polynomial(m: int, x):
    """B_m(x) = sum_k C(m,k) B_k x^(m-k).

    Exact when x is an int or Fraction, mpmath otherwise.
    """
    bernoulli(m)
    exact = isinstance(x, (int, Fraction))
    total = Fraction(0) if exact else mpf(0)
    power = Fraction(1) if exact else mpf(1)
    # ascending powers of x
    for k in range(m, -1, -1):
        b = _bernoulli_number(k)
        if b:
            coeff = comb(m, k) * b
            total += coeff * power if exact else (mpf(coeff.numerator) / coeff.denominator) * power
        power *= x
    return total
