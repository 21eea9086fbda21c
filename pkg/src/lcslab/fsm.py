"""Differential LCS tables and the four-state machine that generates them.

Two differentials of the LCS table ``l`` are supported:

* ``vertical``:   ``T[i][j] = l(i, j) - l(i-1, j)``  (row i minus row i-1)
* ``horizontal``: ``H[i][j] = l(i, j) - l(i, j-1)``  (steps along row i)

Both take values in {0, 1}.  A :class:`DiffRow` holds entries ``j = 1..n``; the
``j = 0`` entry is identically zero and is not stored.

The machine scans ``j = 1..n`` along one row.  At each step it reads the
previous row's differential at ``j`` together with ``y_j``, emits the current
row's differential at ``j`` and moves to a new state.  How the two input bits
are packed into a column code, how ``x_i = 0`` rows are fed, which state a row
starts in and which differential the rows carry are not fixed by the tables;
:func:`calibrate_fsm` searches those choices against the DP oracle and the
surviving configuration is frozen in ``data/fsm_config.txt``.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterator, Optional, Sequence

import numpy as np

from .core import SeedSpec, SymbolsLike, lcs_table, make_sequence, random_bits

DiffRow = tuple[int, ...]

READINGS = ("vertical", "horizontal")
BIT_ORDERS = ("diff-high", "y-high")
X0_MODES = ("complement-y", "swap-tables")
COLUMNS = ("00", "01", "10", "11")

CALIBRATION_SEED = 20100
CALIBRATION_MAX_EXHAUSTIVE = 6
CALIBRATION_RANDOM_PAIRS = 1000
CALIBRATION_RANDOM_MAX_LEN = 64


class UncalibratedConfigError(ValueError):
    pass


# -- differential tables ------------------------------------------------------
def diff_table(X: SymbolsLike, Y: SymbolsLike, reading: str = "vertical") -> list[DiffRow]:
    """Rows ``i = 1..m`` of the chosen differential, each of length ``n``."""
    table = lcs_table(X, Y)
    return diff_rows_from_table(table, reading)


def diff_rows_from_table(table: Sequence[Sequence[int]], reading: str = "vertical") -> list[DiffRow]:
    _check_reading(reading)
    rows = []
    for i in range(1, len(table)):
        cur, up = table[i], table[i - 1]
        if reading == "vertical":
            rows.append(tuple(cur[j] - up[j] for j in range(1, len(cur))))
        else:
            rows.append(tuple(cur[j] - cur[j - 1] for j in range(1, len(cur))))
    return rows


def reconstruct_lcs(rows: Sequence[Sequence[int]], n: Optional[int] = None,
                    reading: str = "vertical") -> list[list[int]]:
    """Invert :func:`diff_table`: rebuild the full ``(m+1) x (n+1)`` LCS table.

    ``n`` is only needed when ``rows`` is empty.
    """
    _check_reading(reading)
    if n is None:
        n = len(rows[0]) if rows else 0
    table = [[0] * (n + 1)]
    for r in rows:
        if len(r) != n:
            raise ValueError(f"diff row of length {len(r)}, expected {n}")
        if reading == "vertical":
            up = table[-1]
            table.append([0] + [up[j] + r[j - 1] for j in range(1, n + 1)])
        else:
            table.append([0] + list(itertools.accumulate(r)))
    return table


def _check_reading(reading: str) -> None:
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}, got {reading!r}")


# -- machine tables -------------------------------------------------------------
@dataclass(frozen=True)
class FsmSpec:
    """Transition and output tables indexed ``[state][column code]``."""

    transition: tuple[tuple[int, ...], ...]
    output: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        k = len(self.transition)
        if len(self.output) != k:
            raise ValueError("transition and output tables have different state counts")
        for row in self.transition:
            if len(row) != 4 or any(not 0 <= s < k for s in row):
                raise ValueError(f"bad transition row {row}")
        for row in self.output:
            if len(row) != 4 or any(b not in (0, 1) for b in row):
                raise ValueError(f"bad output row {row}")

    @property
    def n_states(self) -> int:
        return len(self.transition)

    def dumps(self) -> str:
        lines = ["# lcslab fsm v1", f"states {self.n_states}", "columns " + " ".join(COLUMNS), "transition"]
        lines += [f"{s}: " + " ".join(map(str, row)) for s, row in enumerate(self.transition)]
        lines.append("output")
        lines += [f"{s}: " + " ".join(map(str, row)) for s, row in enumerate(self.output)]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> FsmSpec:
        tables: dict[str, list[tuple[int, ...]]] = {"transition": [], "output": []}
        current = None
        n_states = None
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("states"):
                n_states = int(line.split()[1])
            elif line.startswith("columns"):
                if tuple(line.split()[1:]) != COLUMNS:
                    raise ValueError(f"unsupported column layout: {line}")
            elif line in tables:
                current = line
            else:
                if current is None:
                    raise ValueError(f"table row before table header: {raw!r}")
                label, _, values = line.partition(":")
                if int(label) != len(tables[current]):
                    raise ValueError(f"states must be listed in order, got {label}")
                tables[current].append(tuple(int(v) for v in values.split()))
        spec = cls(tuple(tables["transition"]), tuple(tables["output"]))
        if n_states is not None and n_states != spec.n_states:
            raise ValueError(f"header says {n_states} states, tables have {spec.n_states}")
        return spec


def _read_data(name: str) -> str:
    return resources.files("lcslab").joinpath("data", name).read_text(encoding="utf-8")


PAPER_FSM = FsmSpec.loads(_read_data("paper_fsm.txt"))


def fsm_step(spec: FsmSpec, state: int, pair) -> tuple[int, int]:
    """One table lookup: ``(next state, output bit)``.

    ``pair`` is a column label (``"01"``), a 2-tuple of bits (high, low) or the
    integer column code 0..3.
    """
    code = _column_code(pair)
    if not 0 <= state < spec.n_states:
        raise ValueError(f"state {state} outside 0..{spec.n_states - 1}")
    return spec.transition[state][code], spec.output[state][code]


def _column_code(pair) -> int:
    if isinstance(pair, str):
        if pair not in COLUMNS:
            raise ValueError(f"input pair must be one of {COLUMNS}, got {pair!r}")
        return COLUMNS.index(pair)
    if isinstance(pair, tuple):
        hi, lo = pair
        if hi not in (0, 1) or lo not in (0, 1):
            raise ValueError(f"input pair bits must be 0/1, got {pair!r}")
        return hi << 1 | lo
    if pair not in (0, 1, 2, 3):
        raise ValueError(f"input code must be 0..3, got {pair!r}")
    return int(pair)


def reachable_states(spec: FsmSpec, initial: int) -> set[int]:
    seen = {initial}
    todo = [initial]
    while todo:
        s = todo.pop()
        for t in spec.transition[s]:
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return seen


def equivalence_classes(spec: FsmSpec) -> list[frozenset[int]]:
    """Partition states into classes with identical input/output behaviour."""
    # Moore-style refinement, seeded by output rows.
    block = {s: spec.output[s] for s in range(spec.n_states)}
    while True:
        labels = {}
        for s in range(spec.n_states):
            sig = (block[s], tuple(block[t] for t in spec.transition[s]))
            labels[s] = sig
        ids = {sig: k for k, sig in enumerate(sorted(set(labels.values()), key=repr))}
        refined = {s: ids[labels[s]] for s in labels}
        if len(set(refined.values())) == len(set(block.values())):
            break
        block = refined
    classes: dict = {}
    for s, b in block.items():
        classes.setdefault(b, set()).add(s)
    return sorted((frozenset(c) for c in classes.values()), key=min)


# -- configurations -------------------------------------------------------------
@dataclass(frozen=True)
class FsmConfig:
    """How the machine is wired to the LCS rows.

    ``bit_order``: ``diff-high`` puts the previous-row differential in the high
    bit of the column code, ``y-high`` puts ``y_j`` there.
    ``x0``: for rows with ``x_i = 0`` either complement ``y_j``
    (``complement-y``) or complement the differential bit (``swap-tables``).
    """

    initial_state: int
    bit_order: str
    x0: str
    reading: str = "vertical"

    def __post_init__(self):
        if self.initial_state not in range(4):
            raise ValueError(f"initial state {self.initial_state} outside 0..3")
        if self.bit_order not in BIT_ORDERS:
            raise ValueError(f"bit_order must be one of {BIT_ORDERS}")
        if self.x0 not in X0_MODES:
            raise ValueError(f"x0 must be one of {X0_MODES}")
        _check_reading(self.reading)

    def dumps(self) -> str:
        return (f"reading {self.reading}\ninitial_state {self.initial_state}\n"
                f"bit_order {self.bit_order}\nx0 {self.x0}\n")

    @classmethod
    def loads(cls, text: str) -> FsmConfig:
        kv = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if line:
                key, value = line.split(None, 1)
                kv[key] = value.strip()
        return cls(int(kv["initial_state"]), kv["bit_order"], kv["x0"], kv.get("reading", "vertical"))


def candidate_configs(reading: str = "vertical") -> list[FsmConfig]:
    """The 4 x 2 x 2 search space for one reading, in a fixed order."""
    return [FsmConfig(s, b, x, reading) for s in range(4) for b in BIT_ORDERS for x in X0_MODES]


def _load_frozen() -> tuple[FsmConfig, tuple[FsmConfig, ...]]:
    text = _read_data("fsm_config.txt")
    frozen_part, *survivor_parts = text.split("\n---\n")
    return FsmConfig.loads(frozen_part), tuple(FsmConfig.loads(p) for p in survivor_parts)


FROZEN_CONFIG, CALIBRATED_CONFIGS = _load_frozen()


def fsm_row(prev: Sequence[int], Y: SymbolsLike, x_symbol: int, config: FsmConfig = FROZEN_CONFIG,
            spec: FsmSpec = PAPER_FSM, check: bool = True) -> DiffRow:
    """Emit differential row ``i`` from row ``i-1`` in one left-to-right scan.

    Pass ``prev`` as all zeros for ``i = 1``.  With ``check`` set, only
    configurations recorded as calibrated are accepted.
    """
    if check and (spec != PAPER_FSM or config not in CALIBRATED_CONFIGS):
        raise UncalibratedConfigError(f"{config} is not a calibrated configuration for this machine")
    y = make_sequence(Y).bits.tolist()
    if len(prev) != len(y):
        raise ValueError(f"previous row has {len(prev)} entries, |Y| = {len(y)}")
    if x_symbol not in (0, 1):
        raise ValueError("x_symbol must be 0 or 1")
    flip_y = x_symbol == 0 and config.x0 == "complement-y"
    flip_d = x_symbol == 0 and config.x0 == "swap-tables"
    diff_high = config.bit_order == "diff-high"
    trans, outp = spec.transition, spec.output
    state = config.initial_state
    out = []
    for d, yj in zip(prev, y):
        d ^= flip_d
        yj ^= flip_y
        code = (d << 1 | yj) if diff_high else (yj << 1 | d)
        out.append(outp[state][code])
        state = trans[state][code]
    return tuple(out)


def fsm_rows(X: SymbolsLike, Y: SymbolsLike, config: FsmConfig = FROZEN_CONFIG,
             spec: FsmSpec = PAPER_FSM, check: bool = True) -> Iterator[DiffRow]:
    x = make_sequence(X).bits.tolist()
    prev: DiffRow = (0,) * len(make_sequence(Y))
    for xi in x:
        prev = fsm_row(prev, Y, xi, config, spec, check)
        yield prev


def fsm_lcs(X: SymbolsLike, Y: SymbolsLike, config: FsmConfig = FROZEN_CONFIG) -> int:
    """``L(X, Y)`` computed entirely by the machine."""
    if config.reading == "horizontal":
        last: DiffRow = ()
        for last in fsm_rows(X, Y, config):
            pass
        return sum(last)
    return sum(r[-1] for r in fsm_rows(X, Y, config) if r)


# -- calibration ----------------------------------------------------------------
@dataclass(frozen=True)
class Mismatch:
    X: str
    Y: str
    i: int
    j: int
    expected: int
    got: int


@dataclass(frozen=True)
class CandidateResult:
    config: FsmConfig
    mismatch: Optional[Mismatch]
    rows_checked: int

    @property
    def passed(self) -> bool:
        return self.mismatch is None


@dataclass
class CalibrationReport:
    reading: str
    results: list[CandidateResult]
    pairs: int

    @property
    def survivors(self) -> list[FsmConfig]:
        return [r.config for r in self.results if r.passed]

    def render(self) -> str:
        lines = [f"# reading={self.reading} candidates={len(self.results)} pairs={self.pairs} "
                 f"survivors={len(self.survivors)}"]
        for r in self.results:
            c = r.config
            head = f"initial={c.initial_state} bit_order={c.bit_order} x0={c.x0}"
            if r.passed:
                lines.append(f"PASS {head} rows={r.rows_checked}")
            else:
                mm = r.mismatch
                lines.append(f"FAIL {head} first_mismatch X={mm.X} Y={mm.Y} i={mm.i} j={mm.j} "
                             f"expected={mm.expected} got={mm.got}")
        return "\n".join(lines) + "\n"


def calibration_pairs(max_exhaustive: int = CALIBRATION_MAX_EXHAUSTIVE,
                      random_pairs: int = CALIBRATION_RANDOM_PAIRS,
                      random_max_len: int = CALIBRATION_RANDOM_MAX_LEN,
                      seed: int = CALIBRATION_SEED) -> list[tuple[str, str]]:
    """All pairs with ``m, n <= max_exhaustive`` followed by seeded random pairs."""
    def words(k):
        return ["".join(w) for w in itertools.product("01", repeat=k)]

    pairs = [(x, y) for m in range(max_exhaustive + 1) for n in range(max_exhaustive + 1)
             for x in words(m) for y in words(n)]
    for k in range(random_pairs):
        spec = SeedSpec(seed, k)
        lengths = random_bits(14, spec)
        m = int(lengths[:7] @ (1 << np.arange(7))) % (random_max_len + 1)
        n = int(lengths[7:] @ (1 << np.arange(7))) % (random_max_len + 1)
        bits = random_bits(14 + m + n, spec)[14:]
        pairs.append(("".join(map(str, bits[:m])), "".join(map(str, bits[m:]))))
    return pairs


@lru_cache(maxsize=4)
def _oracle(pairs: tuple[tuple[str, str], ...], reading: str) -> tuple[list[DiffRow], ...]:
    return tuple(diff_table(x, y, reading) for x, y in pairs)


def check_config(config: FsmConfig, pairs: Sequence[tuple[str, str]], spec: FsmSpec = PAPER_FSM,
                 expected: Optional[Sequence[list[DiffRow]]] = None) -> CandidateResult:
    """Run one configuration over ``pairs``; stop at the first disagreement."""
    if expected is None:
        expected = [diff_table(x, y, config.reading) for x, y in pairs]
    rows_checked = 0
    for (x, y), want_rows in zip(pairs, expected):
        for i, (got, want) in enumerate(zip(fsm_rows(x, y, config, spec, check=False), want_rows), 1):
            if got != want:
                j = next(k for k in range(len(want)) if got[k] != want[k]) + 1
                return CandidateResult(config, Mismatch(x, y, i, j, want[j - 1], got[j - 1]), rows_checked)
            rows_checked += 1
    return CandidateResult(config, None, rows_checked)


def calibrate_fsm(spec: FsmSpec = PAPER_FSM, reading: str = "vertical",
                  pairs: Optional[Sequence[tuple[str, str]]] = None, workers: int = 1) -> CalibrationReport:
    """Test every candidate wiring of ``spec`` for one reading against the DP oracle."""
    pairs = tuple(calibration_pairs() if pairs is None else pairs)
    expected = _oracle(pairs, reading)
    configs = candidate_configs(reading)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda c: check_config(c, pairs, spec, expected), configs))
    else:
        results = [check_config(c, pairs, spec, expected) for c in configs]
    return CalibrationReport(reading, results, len(pairs))


@dataclass
class CalibrationOutcome:
    reports: list[CalibrationReport] = field(default_factory=list)

    @property
    def survivors(self) -> list[FsmConfig]:
        return [c for r in self.reports for c in r.survivors]

    @property
    def frozen(self) -> Optional[FsmConfig]:
        s = self.survivors
        return s[0] if s else None

    def render(self) -> str:
        return "".join(r.render() for r in self.reports)

    def frozen_text(self) -> str:
        """Contents for ``data/fsm_config.txt``: the frozen config, then every survivor."""
        if self.frozen is None:
            raise UncalibratedConfigError("no configuration survived calibration")
        return "\n---\n".join([self.frozen.dumps()] + [c.dumps() for c in self.survivors])


def calibrate_with_fallback(spec: FsmSpec = PAPER_FSM, pairs=None, workers: int = 1) -> CalibrationOutcome:
    """Vertical reading first; the horizontal reading only if nothing survives."""
    outcome = CalibrationOutcome()
    for reading in READINGS:
        report = calibrate_fsm(spec, reading, pairs, workers)
        outcome.reports.append(report)
        if report.survivors:
            break
    return outcome
