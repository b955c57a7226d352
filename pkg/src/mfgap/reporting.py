"""Deterministic report serialization and seed plumbing.

Reports must be byte-identical across reruns with the same configuration,
so floats are rendered with a fixed 17-significant-digit format (which
round-trips IEEE doubles exactly), dict keys are sorted, and no wall-clock
or environment data enters the canonical bytes.  Timings travel next to
reports, never inside them.
"""

from __future__ import annotations

import json
import math
import time
from contextlib import contextmanager

import numpy as np


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"non-finite float {x} in report")
    if x == int(x) and abs(x) < 1e16:
        return f"{x:.1f}"
    return format(x, ".17g")


def canonical_json(obj, indent: int = 0) -> str:
    """Render a report as canonical JSON text (sorted keys, fixed floats)."""
    pad = " " * indent
    inner = " " * (indent + 2)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=True)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        rows = [inner + canonical_json(v, indent + 2) for v in obj]
        return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = []
        for k in sorted(obj):
            if not isinstance(k, str):
                raise TypeError(f"report keys must be strings, got {k!r}")
            rows.append(
                inner + json.dumps(k) + ": " + canonical_json(obj[k], indent + 2)
            )
        return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj)} into a report")


def write_report(path: str, report: dict) -> None:
    with open(path, "w") as fh:
        fh.write(canonical_json(report))
        fh.write("\n")


def csv_text(header: list[str], rows: list[tuple]) -> str:
    """Small deterministic CSV writer with the same float policy."""
    out = [",".join(header)]
    for row in rows:
        cells = []
        for v in row:
            if isinstance(v, (float, np.floating)):
                cells.append(format_float(float(v)))
            else:
                cells.append(str(v))
        out.append(",".join(cells))
    return "\n".join(out) + "\n"


def spawn_seeds(master: int, n: int) -> list[int]:
    """Deterministic child seeds; one master seed governs every suite."""
    state = np.random.SeedSequence(master).generate_state(n, dtype="uint64")
    return [int(s) for s in state]


@contextmanager
def stopwatch(sink: dict, key: str = "wall_clock_seconds"):
    start = time.perf_counter()
    try:
        yield
    finally:
        sink[key] = time.perf_counter() - start
