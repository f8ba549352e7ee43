"""JSON file formats.

Floats are written with the shortest repr that survives a write/read
round trip, and dictionaries keep insertion order, so identical
inputs give byte-identical files.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import NotParaLinear, ParseError, ShapeMismatch
from .funcalc import SpectrumFunction
from .paralinear import ParaLinearOperator


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return repr(x)


def _encode(obj, indent: int, level: int) -> str:
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist(), indent, level)
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    return _encode(obj, indent, 0) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from e


def read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e


def operator_from_json(obj, tol: float = 1e-9) -> ParaLinearOperator:
    """Parse ``{"dim", "core"}``, ``{"dim", "matrix"}`` or ``{"dim", "octonion_matrix"}``."""
    if not isinstance(obj, dict) or "dim" not in obj:
        raise ParseError("operator JSON must be an object with a 'dim' field")
    try:
        n = int(obj["dim"])
    except (TypeError, ValueError) as e:
        raise ParseError(f"bad dim: {obj['dim']!r}") from e
    if n < 1:
        raise ParseError("dim must be positive")
    try:
        if "core" in obj:
            core = np.asarray(obj["core"], dtype=float)
            if core.shape != (n, 8 * n):
                raise ParseError(f"core must be {n} x {8 * n}, got {core.shape}")
            return ParaLinearOperator(core)
        if "matrix" in obj:
            M = np.asarray(obj["matrix"], dtype=float)
            if M.shape != (8 * n, 8 * n):
                raise ParseError(f"matrix must be {8 * n} x {8 * n}, got {M.shape}")
            return ParaLinearOperator.from_real_matrix(M, tol=tol * max(1.0, float(np.abs(M).max())))
        if "octonion_matrix" in obj:
            A = np.asarray(obj["octonion_matrix"], dtype=float)
            if A.shape != (n, n, 8):
                raise ParseError(f"octonion_matrix must be {n} x {n} x 8, got {A.shape}")
            return ParaLinearOperator.octonion_matrix(A)
    except NotParaLinear as e:
        raise ParseError(f"matrix is not a right para-linear operator ({e})") from e
    except (ValueError, TypeError, ShapeMismatch) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(f"malformed operator data: {e}") from e
    raise ParseError("operator JSON needs one of 'core', 'matrix', 'octonion_matrix'")


def operator_to_json(T: ParaLinearOperator, form: str = "core") -> dict:
    if form == "core":
        return {"dim": T.dim, "core": T.core}
    if form == "matrix":
        return {"dim": T.dim, "matrix": T.matrix}
    raise ValueError(f"unknown operator form {form!r}")


def function_from_json(obj) -> SpectrumFunction:
    """Parse ``{"values": [{"lambda": r, "f": [8 reals] or r}, ...]}``."""
    try:
        rows = obj["values"]
        table = []
        for row in rows:
            f = row["f"]
            val = float(f) if np.isscalar(f) else np.asarray(f, dtype=float)
            if not np.isscalar(val) and val.shape != (8,):
                raise ParseError(f"function value must be a real or 8 reals, got shape {val.shape}")
            table.append((float(row["lambda"]), val))
        return SpectrumFunction(table)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed function table: {e}") from e
