"""Deterministic JSON and CSV emission.

Identical inputs must produce byte-identical output: dictionary keys are
emitted sorted, floats are formatted with 17 significant digits, and no
locale- or hash-order-dependent path is used anywhere.
"""

from __future__ import annotations

import csv
import io
import json
import math

from .bounds import BoundReport

CSV_COLUMNS = (
    "statement_id",
    "f",
    "h",
    "a",
    "b",
    "x",
    "exponent",
    "lhs",
    "rhs",
    "gap",
    "holds",
    "hyp_ok",
    "quad_err",
    "status",
)


def fmt_float(x: float) -> str:
    if x == 0.0:
        return "0"
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite float {x!r}")
    return format(x, ".17g")


def _emit(obj) -> str:
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, dict):
        items = sorted(obj.items(), key=lambda kv: kv[0])
        return "{" + ",".join(f"{json.dumps(k)}:{_emit(v)}" for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_emit(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(obj) -> str:
    """Compact deterministic JSON (sorted keys, .17g floats)."""
    return _emit(obj)


def report_to_dict(r: BoundReport) -> dict:
    d = {
        "statement_id": r.statement_id,
        "inputs": r.inputs,
        "lhs": r.lhs,
        "rhs": r.rhs,
        "gap": r.gap,
        "holds": r.holds,
        "hypothesis_checks": r.hypothesis_checks,
        "quadrature_error": r.quadrature_error,
    }
    if r.note:
        d["note"] = r.note
    if r.extra:
        d["extra"] = r.extra
    return d


def report_to_json(r: BoundReport) -> str:
    return to_json(report_to_dict(r))


def csv_header() -> str:
    return ",".join(CSV_COLUMNS)


def csv_row(cells: dict) -> str:
    """One CSV line with the fixed column set; missing cells stay empty."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="")
    row = []
    for col in CSV_COLUMNS:
        v = cells.get(col)
        if v is None:
            row.append("")
        elif isinstance(v, bool):
            row.append("true" if v else "false")
        elif isinstance(v, float):
            row.append(fmt_float(v))
        else:
            row.append(str(v))
    writer.writerow(row)
    return buf.getvalue()
