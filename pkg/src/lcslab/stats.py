from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, Optional


@dataclass(frozen=True)
class TrialStats:
    """Sample mean of per-trial values and the standard deviation of that mean."""

    n: int
    trials: int
    mean: float
    err: float
    seed: int
    m: Optional[int] = None

    def as_dict(self) -> dict:
        return asdict(self)


def mean_and_err(values: Iterable[float]) -> tuple[float, float]:
    """Order-independent mean and standard error (``nan`` error for < 2 values).

    ``math.fsum`` is exactly rounded, so the result does not depend on the order
    in which workers delivered the values.
    """
    vals = list(values)
    k = len(vals)
    if k == 0:
        raise ValueError("no values")
    mean = math.fsum(vals) / k
    if k < 2:
        return mean, math.nan
    var = math.fsum((v - mean) ** 2 for v in vals) / (k - 1)
    return mean, math.sqrt(var / k)
