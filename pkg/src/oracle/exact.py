import logging
from dataclasses import dataclass

import numpy as np
from mpmath import mp, mpf, fabs

from src.models import LambdaSpec, LData, l_data, l_eval, parts_up_to
from src.special import riemann_zeta
from src.utils.errors import ArgumentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BigCountTable:
    """Exact partition counts p(0..n_max) for a fixed set of parts."""
    n_max: int
    counts: tuple[int, ...]
    parts_used: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        return self.counts[n]

    def __len__(self) -> int:
        return len(self.counts)


def exact_counts(parts, n_max: int) -> BigCountTable:
    """Count multisets of parts summing to each n <= n_max.

    Coin-change DP over the parts in increasing order with Python integers, so
    counts never overflow.

    Args:
        parts: distinct positive integers
        n_max: largest target, at least 0

    Returns:
        BigCountTable
    """
    if n_max < 0:
        raise ArgumentError(f"n_max must be non-negative, got {n_max}")
    parts = sorted(int(m) for m in parts)
    if any(m < 1 for m in parts):
        raise ArgumentError("parts must be positive integers")
    if len(set(parts)) != len(parts):
        raise ArgumentError("parts must be distinct")

    used = [m for m in parts if m <= n_max]
    counts = [0] * (n_max + 1)
    counts[0] = 1
    for m in used:
        for n in range(m, n_max + 1):
            counts[n] += counts[n - m]
    logger.debug(f"DP over {len(used)} parts up to n = {n_max}")
    return BigCountTable(n_max=n_max, counts=tuple(counts), parts_used=tuple(used))


def pentagonal_counts(n_max: int) -> BigCountTable:
    """Classical p(n) by Euler's pentagonal-number recurrence."""
    if n_max < 0:
        raise ArgumentError(f"n_max must be non-negative, got {n_max}")
    counts = [0] * (n_max + 1)
    counts[0] = 1
    for n in range(1, n_max + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * counts[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * counts[n - g2]
            k += 1
        counts[n] = total
    return BigCountTable(n_max=n_max, counts=tuple(counts), parts_used=tuple(range(1, n_max + 1)))


def model_counts(spec: LambdaSpec, n_max: int) -> BigCountTable:
    """exact_counts over the parts of a model."""
    parts = parts_up_to(spec, n_max) if n_max >= 1 else []
    return exact_counts(parts, n_max)


def f_weights(spec: LambdaSpec, n_max: int) -> np.ndarray:
    """f(n) = sum of the parts dividing n, for n = 0..n_max (entry 0 is 0)."""
    if n_max < 1:
        raise ArgumentError(f"n_max must be at least 1, got {n_max}")
    weights = np.zeros(n_max + 1, dtype=np.int64)
    for m in parts_up_to(spec, n_max):
        weights[m::m] += m
    return weights


def convolution_residual(spec: LambdaSpec, z, N: int, data: LData | None = None) -> dict:
    """Truncation residual of sum_{n<=N} f(n) n^-(z+1) = zeta(z+1) L(z).

    Args:
        spec: part-set model
        z: real exponent with z > alpha
        N: truncation point

    Returns:
        dict with the partial sum, the closed form, the residual and the
        reference bound 10 N^(alpha - z)
    """
    data = data or l_data(spec)
    z = mpf(z)
    if z <= data.alpha:
        raise ArgumentError(f"convolution identity needs z > alpha = {data.alpha}, got {z}")
    weights = f_weights(spec, N)
    partial = mp.fsum(mpf(int(weights[n])) / mpf(n) ** (z + 1) for n in range(1, N + 1))
    closed = riemann_zeta(z + 1) * l_eval(spec, z)
    residual = fabs(closed - partial)
    bound = 10 * mpf(N) ** (data.alpha - z)
    logger.debug(f"Convolution residual at N = {N}: {mp.nstr(residual, 8)} (bound {mp.nstr(bound, 8)})")
    return {'N': N, 'partial': partial, 'closed_form': closed, 'residual': residual, 'bound': bound, 'passed': residual < bound}
