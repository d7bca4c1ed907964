"""Report serialization: dataclass trees to deterministic JSON and CSV.

Byte-identical output for identical inputs is a design requirement (golden
tests diff the files), so everything here is order-preserving: dataclass
fields serialize in declaration order, dicts in insertion order, and floats
in shortest round-trip form (Python repr).  Non-finite floats become the
strings "nan", "inf", "-inf" to keep the JSON strict.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
from typing import Any, Dict, List

import numpy as np

__all__ = ["to_jsonable", "render_json", "flatten_record", "render_csv"]


def _float_value(x: float):
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def to_jsonable(obj: Any):
    """Recursively convert reports, dataclasses, and numpy values to
    JSON-serializable structures with deterministic ordering."""
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _float_value(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        c = complex(obj)
        return {"re": _float_value(c.real), "im": _float_value(c.imag)}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out: Dict[str, Any] = {"type": type(obj).__name__}
        for f in dataclasses.fields(obj):
            if f.name.startswith("_"):
                continue
            out[f.name] = to_jsonable(getattr(obj, f.name))
        return out
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def render_json(payload: Dict[str, Any]) -> str:
    """Top-level document: {config, reports, summary} with trailing newline."""
    return json.dumps(to_jsonable(payload), indent=2, allow_nan=False) + "\n"


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return repr(value)
    if isinstance(value, dict) and set(value) == {"re", "im"}:
        re, im = value["re"], value["im"]
        if isinstance(re, float) and isinstance(im, float):
            return repr(complex(re, im))
    return json.dumps(value, allow_nan=False)


def flatten_record(obj: Any) -> Dict[str, Any]:
    """One CSV row per report: nested values collapse to compact JSON."""
    data = to_jsonable(obj)
    if not isinstance(data, dict):
        return {"value": data}
    return data


def render_csv(reports: List[Any]) -> str:
    """Rows for all reports; columns are the union of keys in first-seen order."""
    rows = [flatten_record(r) for r in reports]
    columns: List[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(col)) for col in columns])
    return buf.getvalue()
