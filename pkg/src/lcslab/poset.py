"""Match poset of two binary sequences and its longest chain.

The points are the index pairs ``(i, j)`` (1-based) with ``x_i == y_j``,
ordered by ``(i, j) < (i', j')`` iff ``i < i'`` and ``j < j'``.  A longest chain
is a longest strictly increasing subsequence of the ``j`` coordinates once the
points are listed by increasing ``i`` and, within one ``i``, by decreasing
``j`` (so two points of the same row can never both be used).
"""
from __future__ import annotations

from bisect import bisect_left
from typing import NamedTuple

from .core import SymbolsLike, make_sequence


class MatchPoset(NamedTuple):
    m: int
    n: int
    points: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.points)

    @staticmethod
    def less(p: tuple[int, int], q: tuple[int, int]) -> bool:
        return p[0] < q[0] and p[1] < q[1]


def match_points(X: SymbolsLike, Y: SymbolsLike) -> MatchPoset:
    x = make_sequence(X).bits.tolist()
    y = make_sequence(Y).bits.tolist()
    where = {0: [j for j, b in enumerate(y, 1) if b == 0], 1: [j for j, b in enumerate(y, 1) if b == 1]}
    points = tuple((i, j) for i, xi in enumerate(x, 1) for j in where[xi])
    return MatchPoset(len(x), len(y), points)


def _scan(poset: MatchPoset, want_chain: bool):
    # tails[k]: smallest possible last j of a chain of length k+1
    tails: list[int] = []
    tail_idx: list[int] = []
    parent: list[int] = []  # per scanned point, in scan order
    order = sorted(range(len(poset.points)), key=lambda k: (poset.points[k][0], -poset.points[k][1]))
    for k in order:
        j = poset.points[k][1]
        pos = bisect_left(tails, j)
        if want_chain:
            parent.append(tail_idx[pos - 1] if pos else -1)
        if pos == len(tails):
            tails.append(j)
            tail_idx.append(k)
        else:
            tails[pos] = j
            tail_idx[pos] = k
    return tails, tail_idx, order, parent


def longest_chain(poset: MatchPoset) -> int:
    """Length of a longest chain, in O(|P| log |P|)."""
    tails, *_ = _scan(poset, want_chain=False)
    return len(tails)


def longest_chain_witness(poset: MatchPoset) -> list[tuple[int, int]]:
    """One explicit longest chain, listed in increasing order."""
    tails, tail_idx, order, parent_in_order = _scan(poset, want_chain=True)
    if not tails:
        return []
    parent = dict(zip(order, parent_in_order))
    chain = []
    k = tail_idx[-1]
    while k != -1:
        chain.append(poset.points[k])
        k = parent[k]
    return chain[::-1]


def poset_lcs(X: SymbolsLike, Y: SymbolsLike) -> int:
    return longest_chain(match_points(X, Y))
