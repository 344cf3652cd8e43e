"""JSON schemas for matrices, point lists and Parrott blocks.

A matrix is ``{"rows": r, "cols": c, "entries": [[re, im], ...]}`` in
row-major order. Floats are written with Python's shortest round-trip
``repr``, so a dump/load cycle reproduces every double exactly.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .errors import InputError

SCHEMA_VERSION = "v1"

__all__ = [
    "SCHEMA_VERSION",
    "SchemaError",
    "complex_to_json",
    "complex_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "omegas_to_json",
    "omegas_from_json",
    "blocks_from_json",
    "parse_complex",
    "dumps",
]


class SchemaError(InputError):
    """A JSON document does not match the expected schema."""


def _real(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{where}: expected a number, got {type(value).__name__}")
    value = float(value)
    if not math.isfinite(value):
        raise SchemaError(f"{where}: must be finite")
    return value


def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def complex_from_json(value, where: str = "value") -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise SchemaError(f"{where}: expected [re, im], got {len(value)} items")
        return complex(_real(value[0], f"{where}[0]"), _real(value[1], f"{where}[1]"))
    return complex(_real(value, where), 0.0)


def matrix_to_json(M) -> dict:
    M = np.asarray(M, dtype=np.complex128)
    rows, cols = M.shape
    return {
        "rows": int(rows),
        "cols": int(cols),
        "entries": [complex_to_json(z) for z in M.reshape(-1)],
    }


def matrix_from_json(obj, where: str = "matrix") -> np.ndarray:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object with rows, cols, entries")
    for key in ("rows", "cols", "entries"):
        if key not in obj:
            raise SchemaError(f"{where}.{key}: missing")
    rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    for key, v in (("rows", rows), ("cols", cols)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise SchemaError(f"{where}.{key}: expected a positive integer, got {v!r}")
    if not isinstance(entries, list):
        raise SchemaError(f"{where}.entries: expected a list")
    if len(entries) != rows * cols:
        raise SchemaError(f"{where}.entries: expected {rows * cols} entries, got {len(entries)}")
    values = [complex_from_json(e, f"{where}.entries[{k}]") for k, e in enumerate(entries)]
    return np.array(values, dtype=np.complex128).reshape(rows, cols)


def omegas_to_json(omegas) -> dict:
    return {"omegas": [complex_to_json(w) for w in omegas]}


def omegas_from_json(obj) -> list[complex]:
    if not isinstance(obj, dict) or "omegas" not in obj:
        raise SchemaError("omegas: missing")
    values = obj["omegas"]
    if not isinstance(values, list) or not values:
        raise SchemaError("omegas: expected a non-empty list of [re, im] pairs")
    return [complex_from_json(v, f"omegas[{k}]") for k, v in enumerate(values)]


def blocks_from_json(obj) -> dict[str, np.ndarray]:
    if not isinstance(obj, dict):
        raise SchemaError("blocks: expected an object with A, C, D")
    out = {}
    for key in ("A", "C", "D"):
        if key not in obj:
            raise SchemaError(f"{key}: missing")
        out[key] = matrix_from_json(obj[key], key)
    return out


def parse_complex(text: str) -> complex:
    """Parse ``"a+bi"``, ``"a-bj"``, ``"bi"`` or ``"a"``."""
    s = text.strip().replace(" ", "")
    if not s:
        raise InputError("empty complex number")
    try:
        z = complex(s.replace("i", "j"))
    except ValueError:
        raise InputError(f"cannot parse complex number {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InputError(f"complex number {text!r} is not finite")
    return z


def _default(obj: Any):
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    raise TypeError(f"{type(obj).__name__} is not JSON serializable")


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, no NaN/Inf."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False, default=_default) + "\n"
