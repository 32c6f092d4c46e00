import heapq
import itertools
import logging
from dataclasses import dataclass
from math import gcd
from typing import Iterator, Union

from src.models.polynomial import monotone_from, poly_value, validate_polynomial
from src.utils.errors import AdmissibilityError, ArgumentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Classical:
    """All positive integers."""


@dataclass(frozen=True)
class PowerAP:
    """Parts (q n + a)^k for n >= 0."""
    a: int
    q: int
    k: int

    def __post_init__(self):
        if self.a < 1 or self.q < 1 or self.k < 1:
            raise ArgumentError(f"ap(a,q,k) needs a, q, k >= 1, got ({self.a},{self.q},{self.k})")
        if gcd(self.a, self.q) != 1:
            raise AdmissibilityError(
                f"ap({self.a},{self.q},{self.k}) violates condition (a): gcd(a, q) = {gcd(self.a, self.q)}",
                conditions=['a'],
            )


@dataclass(frozen=True)
class Polynomial:
    """Parts f(n) for n >= 0, coefficients leading-first."""
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'coeffs', tuple(int(c) for c in self.coeffs))
        ok, message = validate_polynomial(self.coeffs)
        if not ok:
            raise ArgumentError(f"poly{self.coeffs}: {message}")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def value(self, n: int) -> int:
        return poly_value(self.coeffs, n)


@dataclass(frozen=True)
class UnionAP:
    """Union of arithmetic progressions a_i + q_i N."""
    progressions: tuple[tuple[int, int], ...]

    def __post_init__(self):
        progressions = tuple((int(a), int(q)) for a, q in self.progressions)
        if not progressions:
            raise ArgumentError("unionap needs at least one progression")
        for a, q in progressions:
            if a < 1 or q < 1:
                raise ArgumentError(f"progression ({a},{q}) needs a, q >= 1")
        if len(set(progressions)) != len(progressions):
            raise ArgumentError(f"unionap lists a progression twice: {progressions}")
        object.__setattr__(self, 'progressions', progressions)


@dataclass(frozen=True)
class KPowerPlusSingleton:
    """Multiples of k together with the single part a."""
    k: int
    a: int

    def __post_init__(self):
        if self.k < 2 or self.a < 1:
            raise ArgumentError(f"kpow1(k,a) needs k >= 2 and a >= 1, got ({self.k},{self.a})")
        if gcd(self.a, self.k) != 1:
            raise AdmissibilityError(
                f"kpow1({self.k},{self.a}) violates condition (a): gcd(a, k) = {gcd(self.a, self.k)}",
                conditions=['a'],
            )


LambdaSpec = Union[Classical, PowerAP, Polynomial, UnionAP, KPowerPlusSingleton]


def _polynomial_parts(spec: Polynomial) -> Iterator[int]:
    # values before the monotone point can land anywhere, so hold them in a heap
    n0 = monotone_from(spec.coeffs)
    pending = [spec.value(n) for n in range(n0 + 1)]
    heapq.heapify(pending)
    n = n0 + 1
    while True:
        upcoming = spec.value(n)
        while pending and pending[0] < upcoming:
            yield heapq.heappop(pending)
        heapq.heappush(pending, upcoming)
        n += 1


def _dedupe(parts: Iterator[int]) -> Iterator[int]:
    last = None
    for m in parts:
        if m != last:
            yield m
            last = m


def iter_parts(spec: LambdaSpec) -> Iterator[int]:
    """Infinite strictly increasing generator over the parts of the model."""
    if isinstance(spec, Classical):
        return itertools.count(1)
    if isinstance(spec, PowerAP):
        return ((spec.q * n + spec.a) ** spec.k for n in itertools.count())
    if isinstance(spec, Polynomial):
        return _polynomial_parts(spec)
    if isinstance(spec, UnionAP):
        streams = [itertools.count(a, q) for a, q in spec.progressions]
        return _dedupe(heapq.merge(*streams))
    if isinstance(spec, KPowerPlusSingleton):
        multiples = (spec.k * n for n in itertools.count(1))
        return heapq.merge(multiples, [spec.a])
    raise ArgumentError(f"unknown model {spec!r}")


def parts_up_to(spec: LambdaSpec, x_max: int) -> list[int]:
    """Elements of the part set in [1, x_max], strictly increasing."""
    if x_max < 1:
        raise ArgumentError(f"x_max must be at least 1, got {x_max}")
    if isinstance(spec, Classical):
        return list(range(1, x_max + 1))
    return list(itertools.takewhile(lambda m: m <= x_max, iter_parts(spec)))


def format_spec(spec: LambdaSpec) -> str:
    """Canonical text form, parseable by the model grammar."""
    if isinstance(spec, Classical):
        return 'classical'
    if isinstance(spec, PowerAP):
        if spec.a == 1 and spec.q == 1:
            return f'powers({spec.k})'
        return f'ap({spec.a},{spec.q},{spec.k})'
    if isinstance(spec, Polynomial):
        return f"poly({','.join(str(c) for c in spec.coeffs)})"
    if isinstance(spec, UnionAP):
        return f"unionap({';'.join(f'{a},{q}' for a, q in spec.progressions)})"
    if isinstance(spec, KPowerPlusSingleton):
        return f'kpow1({spec.k},{spec.a})'
    raise ArgumentError(f"unknown model {spec!r}")
