"""LCS laboratory for binary sequences."""
from .core import (
    BinarySequence,
    SeedSpec,
    lcs_length,
    lcs_table,
    make_sequence,
    prefix_lengths,
    random_pair,
    random_sequence,
)
from .engines import ENGINES, lcs

__all__ = [
    "BinarySequence",
    "ENGINES",
    "SeedSpec",
    "lcs",
    "lcs_length",
    "lcs_table",
    "make_sequence",
    "prefix_lengths",
    "random_pair",
    "random_sequence",
]

__version__ = "0.1.0"
