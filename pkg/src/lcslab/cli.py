"""Command-line entry point: ``lcslab <command> ...`` (or ``python -m lcslab``)."""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import combinatorics, estimator, fsm
from .core import BinarySequence, make_sequence, prefix_lengths
from .engines import ENGINES, lcs
from .rows import lcs_rows
from .tables import fmt, render

PROG = "lcslab"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # one-line diagnostic, no usage dump
        self.exit(2, f"{PROG}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}") from None


def _alpha_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("alpha range must look like lo:hi:step")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad alpha range {text!r}") from None
    if not (0 < lo <= hi and step > 0):
        raise argparse.ArgumentTypeError("alpha range needs 0 < lo <= hi and step > 0")
    return lo, hi, step


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be in [0, 2**64)")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _add_pair_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("X", nargs="?", help="first sequence as a 0/1 string")
    p.add_argument("Y", nargs="?", help="second sequence as a 0/1 string")
    p.add_argument("--x-file", type=Path, help="read X from a file instead")
    p.add_argument("--y-file", type=Path, help="read Y from a file instead")
    p.add_argument("--packed", action="store_true",
                   help="files hold packed bytes (LSB first) rather than 0/1 text")
    p.add_argument("--x-length", type=int, help="symbol count of a packed X file (default: 8 * bytes)")
    p.add_argument("--y-length", type=int, help="symbol count of a packed Y file (default: 8 * bytes)")


def _add_experiment_args(p: argparse.ArgumentParser, trials: int) -> None:
    p.add_argument("--trials", type=_positive, default=trials)
    p.add_argument("--seed", type=_seed, default=estimator.DEFAULT_SEED)
    p.add_argument("--engine", choices=sorted(ENGINES), default="rows")
    p.add_argument("--threads", type=_positive, default=1,
                   help="worker count; never changes the emitted numbers")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", type=Path, help="write here instead of stdout")


def read_sequence(text: Optional[str], path: Optional[Path], packed: bool, length: Optional[int],
                  name: str) -> BinarySequence:
    if (text is None) == (path is None):
        raise ValueError(f"give {name} either inline or with --{name.lower()}-file")
    if path is None:
        return make_sequence(text)
    if packed:
        data = path.read_bytes()
        n = 8 * len(data) if length is None else length
        if not 0 <= n <= 8 * len(data):
            raise ValueError(f"--{name.lower()}-length {n} does not fit in {len(data)} bytes")
        return BinarySequence.from_bits(BinarySequence(data, 8 * len(data)).bits[:n])
    return make_sequence(path.read_text(encoding="ascii").strip())


def _pair(args) -> tuple[BinarySequence, BinarySequence]:
    X = read_sequence(args.X, args.x_file, args.packed, args.x_length, "X")
    Y = read_sequence(args.Y, args.y_file, args.packed, args.y_length, "Y")
    return X, Y


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        args.output.write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


# -- commands -------------------------------------------------------------------
def cmd_lcs(args) -> int:
    X, Y = _pair(args)
    print(lcs(X, Y, args.engine))
    return 0


def cmd_prefix(args) -> int:
    X, Y = _pair(args)
    print(" ".join(map(str, prefix_lengths(X, Y))))
    return 0


def cmd_rows(args) -> int:
    X, Y = _pair(args)
    _, rows = lcs_rows(X, Y, keep_rows=True)
    header = ["i"] + [f"j{j}" for j in range(len(Y) + 1)]
    lines = [",".join(header)] + [",".join(map(str, [i] + r.tolist())) for i, r in enumerate(rows)]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_difftable(args) -> int:
    X, Y = _pair(args)
    if args.engine == "fsm":
        config = fsm.FROZEN_CONFIG
        if args.reading != config.reading:
            raise ValueError(f"the calibrated machine produces the {config.reading} differential")
        rows = list(fsm.fsm_rows(X, Y, config))
    else:
        rows = fsm.diff_table(X, Y, args.reading)
    _emit(args, "".join("".join(map(str, r)) + "\n" for r in rows))
    return 0


def cmd_fsm_calibrate(args) -> int:
    if args.dump_tables:
        sys.stdout.write(fsm.PAPER_FSM.dumps())
        return 0
    outcome = fsm.calibrate_with_fallback(workers=args.threads)
    sys.stdout.write(outcome.render())
    if outcome.frozen is None:
        print(f"{PROG}: no configuration survived calibration", file=sys.stderr)
        return 1
    print("# frozen")
    sys.stdout.write(outcome.frozen.dumps())
    if args.write:
        data = Path(fsm.__file__).parent / "data"
        header = ("# Frozen wiring of data/paper_fsm.txt, produced by `lcslab fsm-calibrate --write`.\n"
                  "# First block: the frozen config. Following blocks: every surviving config.\n")
        (data / "fsm_config.txt").write_text(header + outcome.frozen_text(), encoding="utf-8")
        (data / "fsm_calibration_report.txt").write_text(outcome.render(), encoding="utf-8")
    return 0


def cmd_embed(args) -> int:
    p = combinatorics.embed_prob(args.m, args.n)
    columns = ["m", "n", "numerator", "denominator", "float"]
    row = [args.m, args.n, p.numerator, p.denominator, float(p)]
    if args.mc:
        st = combinatorics.embed_prob_mc(args.m, args.n, args.mc, args.seed)
        columns += ["mc_trials", "mc_mean", "mc_err"]
        row += [st.trials, st.mean, st.err]
    if args.format:
        _emit(args, render(args.format, "embed", "exact", args.seed, columns, [row]))
    else:
        line = f"{p} ({float(p)!r})"
        if args.mc:
            line += f"  mc={fmt(row[-2])} err={fmt(row[-1])} trials={args.mc} seed={args.seed}"
        print(line)
    return 0


def cmd_distribution(args) -> int:
    dist = combinatorics.exact_lcs_distribution(args.m, args.n, workers=args.threads)
    columns = ["m", "n", "value", "numerator", "denominator", "float"]
    rows = [[args.m, args.n, *r] for r in combinatorics.probability_rows(dist)]
    _emit(args, render(args.format, "distribution", "enumeration", "none", columns, rows))
    return 0


def cmd_gamma(args) -> int:
    table = estimator.gamma_table(args.sizes, args.trials, args.seed, args.engine, args.threads)
    columns = ["n", "m", "trials", "mean", "err"]
    rows = [[st.n, st.m, st.trials, st.mean, st.err] for st in table]
    _emit(args, render(args.format, "gamma", args.engine, args.seed, columns, rows))
    return 0


def cmd_psi(args) -> int:
    lo, hi, step = args.alpha_range
    sweep = estimator.figure1_sweep(args.n, lo, hi, step, args.trials, args.seed, args.engine, args.threads)
    columns = ["n", "m", "alpha", "trials", "mean", "err", "analytic", "analytic_minus_mean"]
    rows = [[r.n, r.m, r.ratio, r.trials, r.empirical, r.err, r.analytic, r.analytic - r.empirical]
            for r in sweep]
    _emit(args, render(args.format, "psi", args.engine, args.seed, columns, rows))
    dev = estimator.sweep_max_deviation(sweep)
    if not math.isnan(dev):
        print(f"{PROG}: max |mean - analytic| over 0.6 <= m/n <= 1.8: {dev:.6f}", file=sys.stderr)
    return 0


def cmd_concentration(args) -> int:
    exact = {"auto": None, "exact": True, "sampled": False}[args.mode]
    table = estimator.concentration_check(args.n, args.trials, args.lambdas, args.seed, exact,
                                          args.engine, args.threads)
    columns = ["n", "trials", "lambda", "tail", "bound", "sampling_err", "mode"]
    rows = [[args.n, "exhaustive" if r.mode == "exact" else args.trials, r.lam, r.tail, r.bound, r.sampling_err, r.mode] for r in table]
    _emit(args, render(args.format, "concentration", args.engine, args.seed, columns, rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="LCS experiments on binary sequences")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("lcs", help="length of a longest common subsequence")
    _add_pair_args(p)
    p.add_argument("--engine", choices=sorted(ENGINES), default="rows")
    p.set_defaults(func=cmd_lcs)

    p = sub.add_parser("prefix", help="L(X_k, Y) for k = 0..m")
    _add_pair_args(p)
    p.set_defaults(func=cmd_prefix)

    p = sub.add_parser("rows", help="full LCS table as CSV, one row per prefix of X")
    _add_pair_args(p)
    p.add_argument("--output", type=Path)
    p.set_defaults(func=cmd_rows)

    p = sub.add_parser("difftable", help="0/1 grid of a differential of the LCS table")
    _add_pair_args(p)
    p.add_argument("--reading", choices=fsm.READINGS, default="vertical")
    p.add_argument("--engine", choices=("dp", "fsm"), default="dp")
    p.add_argument("--output", type=Path)
    p.set_defaults(func=cmd_difftable)

    p = sub.add_parser("fsm-calibrate", help="search wirings of the four-state machine")
    p.add_argument("--write", action="store_true", help="refresh the frozen config and report files")
    p.add_argument("--dump-tables", action="store_true", help="print the machine tables and exit")
    p.add_argument("--threads", type=_positive, default=1)
    p.set_defaults(func=cmd_fsm_calibrate)

    p = sub.add_parser("embed", help="probability that a length-m sequence embeds in a random length-n one")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--mc", type=_positive, metavar="TRIALS", help="also estimate by sampling")
    p.add_argument("--seed", type=_seed, default=estimator.DEFAULT_SEED)
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--output", type=Path)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("distribution", help="exact law of L(X, Y) by enumeration (m + n <= 24)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", type=Path)
    p.set_defaults(func=cmd_distribution)

    p = sub.add_parser("gamma", help="Monte Carlo table of E[L(n, n)] / n")
    p.add_argument("--sizes", type=_int_list, default=[64, 128, 256, 512, 1024])
    _add_experiment_args(p, trials=50)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("psi", help="sweep of L(m, n) / n against the elliptical arc")
    p.add_argument("--alpha-range", type=_alpha_range, default=(0.5, 2.0, 0.025))
    p.add_argument("--n", type=_positive, default=1000)
    _add_experiment_args(p, trials=20)
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("concentration", help="tail frequencies against the Azuma-Hoeffding bound")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--lambdas", type=_float_list, default=[0.5, 1.0, 2.0, 4.0])
    p.add_argument("--mode", choices=("auto", "exact", "sampled"), default="auto")
    _add_experiment_args(p, trials=1000)
    p.set_defaults(func=cmd_concentration)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
