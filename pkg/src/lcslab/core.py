"""Binary sequences, seeded randomness and the reference quadratic LCS engine.

Symbols are stored bit-packed, least significant bit first within each byte:
symbol ``k`` (0-based) lives in byte ``k // 8`` at bit ``k % 8``.  Trailing pad
bits of the last byte are always zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

import numpy as np

# Bump when the bit-generation recipe changes; published tables quote it.
RNG_VERSION = 1

SymbolsLike = Union[str, bytes, Iterable[int], "BinarySequence"]


class BinarySequence:
    """Immutable sequence over the alphabet {0, 1}.

    Python indexing (``seq[k]``, slicing, iteration) is 0-based as usual;
    :meth:`symbol` and :meth:`prefix` use the 1-based convention of the LCS
    recurrence, so ``seq.symbol(1)`` is the first symbol and ``seq.prefix(k)``
    is the initial segment of length ``k``.
    """

    __slots__ = ("_packed", "_length", "__dict__")

    def __init__(self, packed: bytes, length: int):
        if length < 0:
            raise ValueError("length must be nonnegative")
        if len(packed) != (length + 7) // 8:
            raise ValueError(f"{len(packed)} bytes cannot hold exactly {length} symbols")
        if length % 8 and packed[-1] >> (length % 8):
            raise ValueError("pad bits of the last byte must be zero")
        self._packed = bytes(packed)
        self._length = length

    @classmethod
    def from_bits(cls, bits: np.ndarray) -> BinarySequence:
        bits = np.asarray(bits, dtype=np.uint8)
        packed = np.packbits(bits, bitorder="little").tobytes()
        return cls(packed, int(bits.size))

    # -- views -----------------------------------------------------------
    @cached_property
    def bits(self) -> np.ndarray:
        """Read-only uint8 array of the symbols (0-based)."""
        arr = np.unpackbits(
            np.frombuffer(self._packed, dtype=np.uint8), count=self._length, bitorder="little"
        )
        arr.flags.writeable = False
        return arr

    def to_bytes(self) -> bytes:
        return self._packed

    @classmethod
    def from_bytes(cls, data: bytes, length: int) -> BinarySequence:
        return cls(data, length)

    def ones(self) -> int:
        return int(self.bits.sum())

    # -- domain model (1-based) -----------------------------------------
    def symbol(self, i: int) -> int:
        if not 1 <= i <= self._length:
            raise IndexError(f"symbol index {i} outside 1..{self._length}")
        return int(self.bits[i - 1])

    def prefix(self, k: int) -> BinarySequence:
        if not 0 <= k <= self._length:
            raise IndexError(f"prefix length {k} outside 0..{self._length}")
        return BinarySequence.from_bits(self.bits[:k])

    def complement(self) -> BinarySequence:
        return BinarySequence.from_bits(1 - self.bits)

    # -- python protocol -------------------------------------------------
    def __len__(self) -> int:
        return self._length

    def __getitem__(self, k):
        if isinstance(k, slice):
            return BinarySequence.from_bits(self.bits[k])
        return int(self.bits[k])

    def __iter__(self):
        return iter(self.bits.tolist())

    def __add__(self, other: BinarySequence) -> BinarySequence:
        if not isinstance(other, BinarySequence):
            return NotImplemented
        return BinarySequence.from_bits(np.concatenate([self.bits, other.bits]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinarySequence):
            return NotImplemented
        return self._length == other._length and self._packed == other._packed

    def __hash__(self) -> int:
        return hash((self._length, self._packed))

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self.bits.tolist())

    def __repr__(self) -> str:
        text = str(self)
        if len(text) > 40:
            text = text[:37] + "..."
        return f"BinarySequence('{text}', length={self._length})"


def make_sequence(symbols: SymbolsLike) -> BinarySequence:
    """Build a sequence from a ``"0101"`` string or an iterable of 0/1 ints."""
    if isinstance(symbols, BinarySequence):
        return symbols
    if isinstance(symbols, (str, bytes)):
        text = symbols.decode("ascii") if isinstance(symbols, bytes) else symbols
        bad = set(text) - {"0", "1"}
        if bad:
            raise ValueError(f"symbols must be '0' or '1', got {sorted(bad)!r}")
        values = [c == "1" for c in text]
    else:
        values = list(symbols)
        for v in values:
            if isinstance(v, bool) or v not in (0, 1):
                raise ValueError(f"symbols must be 0 or 1, got {v!r}")
    return BinarySequence.from_bits(np.array(values, dtype=np.uint8))


# -- randomness -----------------------------------------------------------
@dataclass(frozen=True)
class SeedSpec:
    """A master seed plus a stream index; together they name one bit stream."""

    seed: int
    stream: int = 0

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.stream < 0:
            raise ValueError("stream index must be nonnegative")


def _philox(spec: SeedSpec) -> np.random.Philox:
    # Philox is counter based: the key comes from the seed, the stream index
    # selects a disjoint counter range. Raw 64-bit outputs are stable across
    # numpy releases, unlike Generator.integers.
    key = np.random.SeedSequence(spec.seed).generate_state(2, dtype=np.uint64)
    counter = np.array([0, 0, spec.stream & (2**64 - 1), spec.stream >> 64], dtype=np.uint64)
    return np.random.Philox(key=key, counter=counter)


def random_bits(nbits: int, spec: SeedSpec) -> np.ndarray:
    if nbits < 0:
        raise ValueError("length must be nonnegative")
    if nbits == 0:
        return np.zeros(0, dtype=np.uint8)
    words = _philox(spec).random_raw((nbits + 63) // 64).astype("<u8")
    return np.unpackbits(words.view(np.uint8), count=nbits, bitorder="little")


def random_sequence(length: int, seed: SeedSpec) -> BinarySequence:
    """Uniform i.i.d. fair bits, a pure function of ``(length, seed)``."""
    return BinarySequence.from_bits(random_bits(length, seed))


def random_pair(m: int, n: int, seed: SeedSpec) -> tuple[BinarySequence, BinarySequence]:
    """Independent ``X`` of length m and ``Y`` of length n from a single stream."""
    bits = random_bits(m + n, seed)
    return BinarySequence.from_bits(bits[:m]), BinarySequence.from_bits(bits[m:])


# -- reference DP -----------------------------------------------------------
def _as_list(seq: SymbolsLike) -> list[int]:
    return make_sequence(seq).bits.tolist()


def lcs_table(X: SymbolsLike, Y: SymbolsLike) -> list[list[int]]:
    """Full ``(m+1) x (n+1)`` table with ``table[i][j] = L(X_i, Y_j)``."""
    x, y = _as_list(X), _as_list(Y)
    m, n = len(x), len(y)
    table = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        row, up, xi = table[i], table[i - 1], x[i - 1]
        for j in range(1, n + 1):
            if xi == y[j - 1]:
                row[j] = up[j - 1] + 1
            else:
                row[j] = max(row[j - 1], up[j])
    return table


def prefix_lengths(X: SymbolsLike, Y: SymbolsLike) -> list[int]:
    """``[L(X_0, Y), L(X_1, Y), ..., L(X_m, Y)]`` using O(n) memory."""
    x, y = _as_list(X), _as_list(Y)
    n = len(y)
    row = [0] * (n + 1)
    out = [0]
    for xi in x:
        diag = 0  # row[j-1] of the previous row
        for j in range(1, n + 1):
            above = row[j]
            if xi == y[j - 1]:
                row[j] = diag + 1
            elif row[j - 1] > above:
                row[j] = row[j - 1]
            diag = above
        out.append(row[n])
    return out


def lcs_length(X: SymbolsLike, Y: SymbolsLike) -> int:
    x, y = _as_list(X), _as_list(Y)
    if len(y) > len(x):
        x, y = y, x
    return prefix_lengths(x, y)[-1]
