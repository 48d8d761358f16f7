"""Report envelopes and their text encodings.

Floats are written with 17 significant digits so every double round-trips
exactly and reports diff cleanly between runs.
"""
from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

SCHEMA = "subordkit/1"


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or obj is True or obj is False:
        return json.dumps(obj)
    if isinstance(obj, (bool, np.bool_)):
        return json.dumps(bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, complex):
        return _encode([obj.real, obj.imag], indent, level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def to_json(obj, indent: int = 2) -> str:
    return _encode(obj, indent, 0) + "\n"


def envelope(command: str, config: dict, result: dict, wall_time_ms: float | None) -> dict:
    from . import __version__

    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "config": config,
        "result": result,
        "wall_time_ms": wall_time_ms,
    }


def _flatten(prefix: str, obj, rows: list) -> None:
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, rows)
    elif isinstance(obj, (float, np.floating)):
        rows.append((prefix, fmt_float(obj) if math.isfinite(obj) else ""))
    elif obj is None:
        rows.append((prefix, ""))
    else:
        rows.append((prefix, str(obj)))


def to_key_value_csv(obj: dict) -> str:
    rows: list = []
    _flatten("", obj, rows)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("key", "value"))
    writer.writerows(rows)
    return buf.getvalue()


def boundary_csv(theta, values) -> str:
    """``theta,re,im`` rows, LF line endings, 17 significant digits."""
    lines = ["theta,re,im"]
    for t, w in zip(np.asarray(theta, dtype=float), np.asarray(values, dtype=complex)):
        lines.append(f"{fmt_float(t)},{fmt_float(w.real)},{fmt_float(w.imag)}")
    return "\n".join(lines) + "\n"


def read_boundary_csv(text: str):
    rows = text.strip("\n").split("\n")
    if rows[0] != "theta,re,im":
        raise ValueError("unexpected header")
    data = np.array([[float(x) for x in r.split(",")] for r in rows[1:]])
    return data[:, 0], data[:, 1] + 1j * data[:, 2]
