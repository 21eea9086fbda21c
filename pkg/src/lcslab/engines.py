"""Name -> callable registry for the four LCS engines."""
from __future__ import annotations

from typing import Callable

from .core import SymbolsLike, lcs_length
from .fsm import fsm_lcs
from .poset import poset_lcs
from .rows import lcs_rows

ENGINES: dict[str, Callable[[SymbolsLike, SymbolsLike], int]] = {
    "dp": lcs_length,
    "rows": lcs_rows,
    "fsm": fsm_lcs,
    "poset": poset_lcs,
}


def get_engine(name: str) -> Callable[[SymbolsLike, SymbolsLike], int]:
    try:
        return ENGINES[name]
    except KeyError:
        raise ValueError(f"unknown engine {name!r}; choose from {', '.join(ENGINES)}") from None


def lcs(X: SymbolsLike, Y: SymbolsLike, engine: str = "rows") -> int:
    return get_engine(engine)(X, Y)
