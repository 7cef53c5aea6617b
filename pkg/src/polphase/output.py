"""Deterministic CSV/JSON serialisation.

Floats are written with 17 significant digits in scientific notation, which
round-trips IEEE doubles exactly; column and key order are fixed by the caller.
"""
from __future__ import annotations

import hashlib
import json
import math
from typing import Mapping, Sequence

import numpy as np


def fmt(x: float) -> str:
    x = float(x) + 0.0  # folds -0.0 into 0.0
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite value {x!r}")
    return f"{x:.16e}"


def dumps(obj, indent: int = 0) -> str:
    """JSON text with every float rendered by :func:`fmt`."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    if isinstance(obj, Mapping):
        if not obj:
            return "{}"
        items = (f"{pad}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items())
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, Sequence):
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent + 1) for v in obj) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def checksum(values) -> str:
    text = "\n".join(fmt(v) for v in np.asarray(values, dtype=float).ravel())
    return hashlib.sha256(text.encode("ascii")).hexdigest()


def series_csv(nodes: np.ndarray, series: Mapping[str, np.ndarray]) -> str:
    names = list(series)
    cols = [np.asarray(nodes)] + [np.asarray(series[n]) for n in names]
    lines = [",".join(["phi"] + names)]
    for row in zip(*cols):
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def series_json(config: Mapping, nodes: np.ndarray, series: Mapping[str, np.ndarray],
                extra: Mapping | None = None) -> str:
    doc = {"config": dict(config)}
    if extra:
        doc.update(extra)
    doc["series"] = {"phi": np.asarray(nodes)}
    doc["series"].update({k: np.asarray(v) for k, v in series.items()})
    doc["checksums"] = {k: checksum(v) for k, v in doc["series"].items()}
    return dumps(doc) + "\n"


def record_csv(record: Mapping) -> str:
    keys = list(record)

    def cell(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, (int, float, np.number)):
            return fmt(v)
        return str(v)

    return ",".join(keys) + "\n" + ",".join(cell(record[k]) for k in keys) + "\n"


def matrix_csv(entries: np.ndarray, header: Mapping) -> str:
    """Header lines ``# key=value`` then one line per row of ``re,im`` pairs."""
    lines = [f"# {k}={v}" for k, v in header.items()]
    for row in np.asarray(entries):
        lines.append(",".join(f"{fmt(z.real)},{fmt(z.imag)}" for z in row))
    return "\n".join(lines) + "\n"


def matrix_json(entries: np.ndarray, header: Mapping) -> str:
    entries = np.asarray(entries)
    doc = dict(header)
    doc["real"] = [list(r) for r in entries.real]
    doc["imag"] = [list(r) for r in entries.imag]
    doc["checksums"] = {"real": checksum(entries.real), "imag": checksum(entries.imag)}
    return dumps(doc) + "\n"
