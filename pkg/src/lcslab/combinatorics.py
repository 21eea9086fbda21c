"""Exact embedding probabilities, Azuma-Hoeffding tails and exhaustive LCS laws."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .core import SeedSpec, SymbolsLike, make_sequence, random_sequence
from .rows import lcs_rows
from .stats import TrialStats, mean_and_err

ENUMERATION_BUDGET = 24
_CHUNK_BITS = 18

_pascal: list[list[int]] = [[1]]


def binomial_row(n: int) -> list[int]:
    """Row ``n`` of Pascal's triangle, extending the cache as needed."""
    while len(_pascal) <= n:
        prev = _pascal[-1]
        _pascal.append([1] + [a + b for a, b in zip(prev, prev[1:])] + [1])
    return _pascal[n]


def embed_prob(m: int, n: int) -> Fraction:
    """Probability that a fixed length-``m`` sequence embeds in a random length-``n`` one.

    Equals ``2**-n * sum(C(n, k) for k in m..n)``; zero when ``m > n``.
    """
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    if m > n:
        return Fraction(0)
    return Fraction(sum(binomial_row(n)[m:]), 2**n)


def is_subsequence(X: SymbolsLike, Y: SymbolsLike) -> bool:
    it = iter(make_sequence(Y))
    return all(any(b == a for b in it) for a in make_sequence(X))


def embed_prob_mc(m: int, n: int, trials: int, seed: int, X: Optional[SymbolsLike] = None) -> TrialStats:
    """Monte Carlo frequency of ``L(X, Y) = m`` over random ``Y`` of length ``n``.

    ``X`` defaults to all ones; any fixed ``X`` of length ``m`` has the same law.
    """
    if m > n:
        raise ValueError("need m <= n")
    x = make_sequence("1" * m if X is None else X)
    if len(x) != m:
        raise ValueError(f"X has length {len(x)}, expected {m}")
    hits = [float(lcs_rows(x, random_sequence(n, SeedSpec(seed, k))) == m) for k in range(trials)]
    mean, err = mean_and_err(hits)
    return TrialStats(n=n, m=m, trials=trials, mean=mean, err=err, seed=seed)


def embedding_counts(m: int, n: int) -> list[int]:
    """For every ``X`` in {0,1}^m, the number of ``Y`` in {0,1}^n containing it.

    Entry ``c`` of the result belongs to the ``X`` whose bits are the binary
    digits of ``c`` (LSB first).  Greedy left-to-right matching, vectorised
    over all ``2**(m+n)`` pairs.
    """
    if m + n > ENUMERATION_BUDGET:
        raise ValueError(f"m + n = {m + n} exceeds the enumeration budget {ENUMERATION_BUDGET}")
    k = np.arange(1 << (m + n), dtype=np.int32)
    xcode = k >> n
    pos = np.zeros(k.size, dtype=np.int32)  # symbols of X matched so far
    top = max(m - 1, 0)
    for j in range(n):
        want = (xcode >> np.minimum(pos, top)) & 1
        pos += (pos < m) & (want == ((k >> j) & 1))
    return np.bincount(xcode[pos == m], minlength=1 << m).tolist()


def azuma_tail(lam: float, sided: str = "two") -> float:
    """``2 exp(-lam^2/8)`` (two-sided) or ``exp(-lam^2/8)`` (one-sided)."""
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if sided not in ("one", "two"):
        raise ValueError("sided must be 'one' or 'two'")
    bound = math.exp(-lam * lam / 8)
    return 2 * bound if sided == "two" else bound


# -- exhaustive enumeration ----------------------------------------------------
def _count_chunk(m: int, n: int, start: int, stop: int) -> np.ndarray:
    # Pair code k: bits n..n+m-1 hold X, bits 0..n-1 hold Y.
    k = np.arange(start, stop, dtype=np.int64)
    x = [((k >> (n + i)) & 1).astype(np.uint8) for i in range(m)]
    y = [((k >> j) & 1).astype(np.uint8) for j in range(n)]
    zero = np.zeros(k.size, dtype=np.uint8)
    prev = [zero] * (n + 1)
    for i in range(m):
        cur = [zero]
        for j in range(1, n + 1):
            # the match branch always dominates, so one max covers both cases
            same = 1 - (x[i] ^ y[j - 1])
            cur.append(np.maximum(np.maximum(cur[j - 1], prev[j]), prev[j - 1] + same))
        prev = cur
    return np.bincount(prev[n], minlength=min(m, n) + 1)


def lcs_counts(m: int, n: int, workers: int = 1) -> list[int]:
    """``counts[v]`` = number of the ``2**(m+n)`` pairs with ``L(X, Y) = v``."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    if m + n > ENUMERATION_BUDGET:
        raise ValueError(f"m + n = {m + n} exceeds the enumeration budget {ENUMERATION_BUDGET}")
    total = 1 << (m + n)
    step = 1 << _CHUNK_BITS
    bounds = [(s, min(s + step, total)) for s in range(0, total, step)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda b: _count_chunk(m, n, *b), bounds))
    else:
        parts = [_count_chunk(m, n, *b) for b in bounds]
    counts = [0] * (min(m, n) + 1)
    for part in parts:
        for v, c in enumerate(part.tolist()):
            counts[v] += c
    return counts


def exact_lcs_distribution(m: int, n: int, workers: int = 1) -> dict[int, Fraction]:
    """Exact law of ``L(X, Y)`` for uniform random ``X`` in {0,1}^m, ``Y`` in {0,1}^n."""
    counts = lcs_counts(m, n, workers)
    total = 1 << (m + n)
    return {v: Fraction(c, total) for v, c in enumerate(counts) if c}


def distribution_mean(dist: dict[int, Fraction]) -> Fraction:
    return sum((v * p for v, p in dist.items()), Fraction(0))


def exact_tail(dist: dict[int, Fraction], lam: float, n: int) -> Fraction:
    """``Pr{|L - E L| > lam * sqrt(n)}`` for an exact distribution."""
    mu = distribution_mean(dist)
    # |v - mu| > lam sqrt(n)  <=>  (v - mu)^2 > lam^2 n, compared exactly when lam^2 is rational
    threshold = Fraction(lam) ** 2 * n
    return sum((p for v, p in dist.items() if (v - mu) ** 2 > threshold), Fraction(0))


def probability_rows(dist: dict[int, Fraction]) -> Iterable[tuple[int, int, int, float]]:
    """CSV rows ``(value, numerator, denominator, float)``."""
    for v in sorted(dist):
        p = dist[v]
        yield v, p.numerator, p.denominator, float(p)
