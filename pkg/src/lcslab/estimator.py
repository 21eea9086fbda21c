"""Seeded Monte Carlo estimates of E[L(m, n)] / n and the elliptical-arc approximation.

Trial ``k`` of every experiment draws its pair from stream ``k`` of the master
seed, so a run with more trials extends rather than replaces a shorter one, and
results do not depend on how trials are scheduled over workers.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .combinatorics import azuma_tail, distribution_mean, exact_lcs_distribution, exact_tail
from .core import BinarySequence, SeedSpec, random_bits, random_pair
from .engines import get_engine
from .stats import TrialStats, mean_and_err

DEFAULT_SEED = 1
EXACT_CONCENTRATION_MAX_N = 10


def floor_mul(alpha: float, n: int) -> int:
    """``floor(alpha * n)`` with ``alpha`` read as the decimal it was written as."""
    return math.floor(Fraction(repr(float(alpha))) * n)


def run_trials(fn: Callable[[int], float], trials: int, workers: int = 1) -> list[float]:
    """``[fn(0), ..., fn(trials - 1)]``, evaluated on up to ``workers`` threads."""
    if workers <= 1:
        return [fn(k) for k in range(trials)]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(fn, range(trials)))


def lcs_ratio_samples(m: int, n: int, trials: int, seed: int, engine: str = "rows",
                      workers: int = 1) -> list[float]:
    """``L(X, Y) / n`` for ``trials`` independent pairs with ``|X| = m``, ``|Y| = n``."""
    lcs = get_engine(engine)

    def one(k: int) -> float:
        X, Y = random_pair(m, n, SeedSpec(seed, k))
        return lcs(X, Y) / n

    return run_trials(one, trials, workers)


def estimate_lcs_ratio(m: int, n: int, trials: int, seed: int = DEFAULT_SEED, engine: str = "rows",
                       workers: int = 1) -> TrialStats:
    if n < 1:
        raise ValueError("n must be positive")
    if trials < 1:
        raise ValueError("trials must be positive")
    mean, err = mean_and_err(lcs_ratio_samples(m, n, trials, seed, engine, workers))
    return TrialStats(n=n, m=m, trials=trials, mean=mean, err=err, seed=seed)


def estimate_gamma(n: int, trials: int, seed: int = DEFAULT_SEED, engine: str = "rows",
                   workers: int = 1) -> TrialStats:
    """Estimate ``gamma_n = E[L(n, n)] / n``."""
    return estimate_lcs_ratio(n, n, trials, seed, engine, workers)


def gamma_table(sizes: Sequence[int], trials: int, seed: int = DEFAULT_SEED, engine: str = "rows",
                workers: int = 1) -> list[TrialStats]:
    return [estimate_gamma(n, trials, seed, engine, workers) for n in sizes]


# -- elliptical approximation --------------------------------------------------
def l_star(m: float, n: float) -> float:
    """``sqrt((4mn - n^2 - m^2) / 3)`` on ``n/2 <= m <= 2n``."""
    if n <= 0 or not n / 2 <= m <= 2 * n:
        raise ValueError(f"l_star needs n > 0 and n/2 <= m <= 2n, got m={m}, n={n}")
    return math.sqrt(max(4 * m * n - n * n - m * m, 0) / 3)


def psi_star(alpha: float) -> float:
    """``sqrt((4a - a^2 - 1) / 3)`` on ``1/2 <= a <= 2``; equals ``l_star(a n, n) / n``."""
    if not 0.5 <= alpha <= 2:
        raise ValueError(f"psi_star is defined for 1/2 <= alpha <= 2, got {alpha}")
    return math.sqrt(max(4 * alpha - alpha * alpha - 1, 0) / 3)


def psi_corner(alpha: float) -> Optional[float]:
    """Known exact value of psi outside ``[1/2, 2]``, else ``None``."""
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    if alpha < 0.5:
        return alpha
    if alpha > 2:
        return 1.0
    return None


@dataclass(frozen=True)
class PsiPoint:
    alpha: float
    n: int
    m: int
    trials: int
    estimate: float
    err: float
    psi_star: float  # nan outside [1/2, 2]
    seed: int

    def as_dict(self) -> dict:
        return asdict(self)


def estimate_psi(alpha: float, n: int, trials: int, seed: int = DEFAULT_SEED, engine: str = "rows",
                 workers: int = 1) -> PsiPoint:
    """Estimate ``E[L(floor(alpha n), n)] / n``."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    m = floor_mul(alpha, n)
    stats = estimate_lcs_ratio(m, n, trials, seed, engine, workers)
    analytic = psi_star(alpha) if 0.5 <= alpha <= 2 else math.nan
    return PsiPoint(alpha, n, m, trials, stats.mean, stats.err, analytic, seed)


def alpha_grid(lo: float, hi: float, step: float, n: int) -> list[int]:
    """Values ``m`` with ``m / n`` running from ``lo`` to ``hi`` (inclusive) in ``step``."""
    if not step > 0:
        raise ValueError("step must be positive")
    lo_f, hi_f, step_f = (Fraction(repr(float(v))) for v in (lo, hi, step))
    out = []
    k = 0
    while lo_f + k * step_f <= hi_f:
        out.append(math.floor((lo_f + k * step_f) * n))
        k += 1
    return out


@dataclass(frozen=True)
class SweepRow:
    m: int
    n: int
    trials: int
    empirical: float
    err: float
    analytic: float
    seed: int

    @property
    def ratio(self) -> float:
        return self.m / self.n


def figure1_sweep(n: int = 1000, lo: float = 0.5, hi: float = 2.0, step: float = 0.025, trials: int = 20,
                  seed: int = DEFAULT_SEED, engine: str = "rows", workers: int = 1) -> list[SweepRow]:
    """Empirical ``L(m, n)/n`` next to ``l_star(m, n)/n`` over a grid of ``m/n``."""
    rows = []
    for m in alpha_grid(lo, hi, step, n):
        st = estimate_lcs_ratio(m, n, trials, seed, engine, workers)
        analytic = l_star(m, n) / n if n / 2 <= m <= 2 * n else math.nan
        rows.append(SweepRow(m, n, trials, st.mean, st.err, analytic, seed))
    return rows


def sweep_max_deviation(rows: Sequence[SweepRow], lo: float = 0.6, hi: float = 1.8) -> float:
    """``max |empirical - analytic|`` over rows with ``lo <= m/n <= hi``."""
    devs = [abs(r.empirical - r.analytic) for r in rows if lo <= r.ratio <= hi]
    return max(devs) if devs else math.nan


# -- concentration --------------------------------------------------------------
@dataclass(frozen=True)
class TailRow:
    lam: float
    tail: float
    bound: float
    sampling_err: float  # 0 in exact mode
    mode: str


def concentration_check(n: int, trials: int, lambdas: Sequence[float], seed: int = DEFAULT_SEED,
                        exact: Optional[bool] = None, engine: str = "rows", workers: int = 1) -> list[TailRow]:
    """Tail frequencies ``Pr{|L - E L| > lam sqrt(n)}`` for ``L = L(X, Y)``, ``|X| = |Y| = n``.

    Exact mode (default for ``n <= 10``) uses the enumerated distribution; otherwise
    the sample mean stands in for ``E L``.
    """
    if exact is None:
        exact = n <= EXACT_CONCENTRATION_MAX_N
    out = []
    if exact:
        dist = exact_lcs_distribution(n, n, workers)
        for lam in lambdas:
            out.append(TailRow(lam, float(exact_tail(dist, lam, n)), azuma_tail(lam), 0.0, "exact"))
        return out
    lengths = [round(r * n) for r in lcs_ratio_samples(n, n, trials, seed, engine, workers)]
    mu = math.fsum(lengths) / len(lengths)
    for lam in lambdas:
        hits = sum(abs(v - mu) > lam * math.sqrt(n) for v in lengths)
        p = hits / trials
        out.append(TailRow(lam, p, azuma_tail(lam), math.sqrt(p * (1 - p) / trials), "sampled"))
    return out


def exact_gamma(n: int) -> Fraction:
    """``E[L(n, n)] / n`` by exhaustive enumeration (small ``n`` only)."""
    return distribution_mean(exact_lcs_distribution(n, n)) / n


def superadditivity_samples(count: int, max_len: int, seed: int = DEFAULT_SEED, engine: str = "rows"):
    """Yield ``(lhs, rhs)`` with ``lhs = L(X1+X2, Y1+Y2)`` and ``rhs = L(X1, Y1) + L(X2, Y2)``
    for seeded random quadruples whose lengths are uniform on ``0..max_len``."""
    lcs = get_engine(engine)
    for k in range(count):
        spec = SeedSpec(seed, k)
        head = random_bits(64, spec)
        lens = [int("".join(map(str, head[16 * t:16 * t + 16])), 2) % (max_len + 1) for t in range(4)]
        bits = random_bits(64 + sum(lens), spec)[64:]
        parts, pos = [], 0
        for ln in lens:
            parts.append(bits[pos:pos + ln])
            pos += ln
        X1, Y1, X2, Y2 = (BinarySequence.from_bits(p) for p in parts)
        yield lcs(X1 + X2, Y1 + Y2), lcs(X1, Y1) + lcs(X2, Y2)
