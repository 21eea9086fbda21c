"""CSV / JSON emission for experiment tables.

CSV dialect is pinned for byte reproducibility: comma separated, ``.`` decimal
point, LF line endings, header always present.  Every row repeats the schema
version, experiment id, engine, RNG version and master seed.
"""
from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Sequence

from .core import RNG_VERSION

SCHEMA_VERSION = 1
FLOAT_DIGITS = 8
META_COLUMNS = ("schema", "experiment", "engine", "rng", "seed")


def fmt(value: Any) -> str:
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.{FLOAT_DIGITS}f}"
    return str(value)


def render_csv(experiment: str, engine: str, seed: Any, columns: Sequence[str],
               rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(META_COLUMNS) + list(columns))
    meta = [SCHEMA_VERSION, experiment, engine, RNG_VERSION, seed]
    for row in rows:
        writer.writerow([fmt(v) for v in meta + list(row)])
    return buf.getvalue()


def render_json(experiment: str, engine: str, seed: Any, columns: Sequence[str],
                rows: Sequence[Sequence[Any]]) -> str:
    def clean(v):
        return None if isinstance(v, float) and math.isnan(v) else v

    doc = {
        "schema": SCHEMA_VERSION,
        "experiment": experiment,
        "engine": engine,
        "rng": RNG_VERSION,
        "seed": seed,
        "rows": [dict(zip(columns, map(clean, row)), seed=seed) for row in rows],
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def render(fmt_name: str, *args) -> str:
    if fmt_name == "csv":
        return render_csv(*args)
    if fmt_name == "json":
        return render_json(*args)
    raise ValueError(f"unknown output format {fmt_name!r}")
