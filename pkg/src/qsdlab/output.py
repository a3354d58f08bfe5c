"""CSV and JSON writers for lists of flat dict rows.

CSV cells carry 6 significant digits (scientific notation below 1e-3 in
magnitude); JSON keeps the shortest round-tripping repr of every float and
writes NaN as null.  Both are deterministic for identical input.
"""

from __future__ import annotations

import csv
import io
import json
import math
import numbers


def format_csv_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        x = float(value)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if x != 0 and abs(x) < 1e-3:
            return f"{x:.5e}"
        return f"{x:.6g}"
    return str(value)


def _json_value(value):
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Real):
        x = float(value)
        return None if not math.isfinite(x) else x
    return str(value)


def to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = list(rows[0])
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_csv_value(row[k]) for k in header])
    return buf.getvalue()


def to_json(rows: list[dict]) -> str:
    data = [{k: _json_value(v) for k, v in row.items()} for row in rows]
    return json.dumps(data, indent=1, allow_nan=False) + "\n"


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "csv":
        return to_csv(rows)
    if fmt == "json":
        return to_json(rows)
    raise ValueError(f"unknown format {fmt!r}")
