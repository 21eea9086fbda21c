"""Row-at-a-time LCS via the prefix maximizer and the shift operators.

Row ``m`` of the LCS table is obtained from row ``m-1`` by one application of
``maximizer(apply_T(row, Y, x_m))``: shift-and-increment wherever ``y_j``
equals ``x_m``, then take the running maximum.  Each step is a handful of
vectorised numpy passes over a length ``n+1`` row.
"""
from __future__ import annotations

import numpy as np

from .core import SymbolsLike, make_sequence

# int32 rows: LCS lengths never exceed the shorter input.
_ROW_DTYPE = np.int32


def _row(v) -> np.ndarray:
    return np.asarray(v, dtype=_ROW_DTYPE)


def maximizer(v) -> np.ndarray:
    """Prefix maximum: ``out[j] = max(v[0..j])``."""
    v = _row(v)
    if v.size == 0:
        return v.copy()
    return np.maximum.accumulate(v)


def apply_T(v, Y: SymbolsLike, match_symbol: int) -> np.ndarray:
    """Shift-and-increment at positions whose y-symbol equals ``match_symbol``.

    ``out[0] = v[0]``; for ``i >= 1`` ``out[i] = v[i-1] + 1`` if
    ``y_i == match_symbol`` else ``v[i]``.  ``match_symbol=1`` is T and
    ``match_symbol=0`` is T-bar.
    """
    if match_symbol not in (0, 1):
        raise ValueError("match_symbol must be 0 or 1")
    y = make_sequence(Y).bits
    v = _row(v)
    if v.shape != (y.size + 1,):
        raise ValueError(f"row has {v.size} entries, expected {y.size + 1} for |Y|={y.size}")
    out = v.copy()
    hit = np.flatnonzero(y == match_symbol) + 1
    out[hit] = v[hit - 1] + 1
    return out


def next_row(prev, Y: SymbolsLike, x_symbol: int) -> np.ndarray:
    return maximizer(apply_T(prev, Y, x_symbol))


def _match_masks(y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # masks[s][j] is True where y_j == s; column 0 never matches
    return np.concatenate([[False], y == 0]), np.concatenate([[False], y == 1])


def lcs_rows(X: SymbolsLike, Y: SymbolsLike, keep_rows: bool = False):
    """Run the row recurrence over all of ``X``.

    Returns ``L(X, Y)``, or ``(L(X, Y), rows)`` when ``keep_rows`` is set, where
    ``rows[i]`` is row ``i`` of the LCS table.  Without ``keep_rows`` the
    working set is two rows of length ``n+1``.
    """
    x = make_sequence(X).bits
    y = make_sequence(Y).bits
    n = y.size
    masks = _match_masks(y)
    row = np.zeros(n + 1, dtype=_ROW_DTYPE)
    shifted = np.empty_like(row)
    rows = [row.copy()] if keep_rows else None
    for xi in x.tolist():
        # apply_T fused with the maximizer, allocation free
        shifted[0] = 0
        np.add(row[:-1], 1, out=shifted[1:])
        np.copyto(row, shifted, where=masks[xi])
        np.maximum.accumulate(row, out=row)
        if keep_rows:
            rows.append(row.copy())
    length = int(row[-1])
    return (length, rows) if keep_rows else length


def prefix_lengths_rows(X: SymbolsLike, Y: SymbolsLike) -> list[int]:
    """Same contract as :func:`lcslab.core.prefix_lengths` via the row engine."""
    x = make_sequence(X).bits
    y = make_sequence(Y).bits
    masks = _match_masks(y)
    row = np.zeros(y.size + 1, dtype=_ROW_DTYPE)
    out = [0]
    for xi in x.tolist():
        shifted = np.concatenate([[0], row[:-1] + 1])
        row = np.maximum.accumulate(np.where(masks[xi], shifted, row))
        out.append(int(row[-1]))
    return out
