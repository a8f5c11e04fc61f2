"""JSON and CSV encoding of states, operators and reports.

Complex numbers are two-element ``[re, im]`` arrays and matrices are lists of
rows.  CSV floats carry 17 significant digits so they round-trip exactly.
"""

from __future__ import annotations

import json
import logging
import math

import numpy as np

from .errors import NotNormalizedError, UncertaintyLabError
from .hilbert import as_hermitian, as_state

log = logging.getLogger(__name__)

LENIENT_NORM = (0.9, 1.1)


def _complex(x) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x, 0.0)
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(
        isinstance(t, (int, float)) and not isinstance(t, bool) for t in x
    ):
        return complex(x[0], x[1])
    raise UncertaintyLabError(f"expected [re, im] or a real number, got {x!r}")


def decode_vector(data) -> np.ndarray:
    if not isinstance(data, list):
        raise UncertaintyLabError("a state must be a JSON array")
    return as_state(np.array([_complex(x) for x in data], dtype=complex))


def decode_matrix(data) -> np.ndarray:
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise UncertaintyLabError("an operator must be an array of row arrays")
    rows = [[_complex(x) for x in row] for row in data]
    if len({len(r) for r in rows}) > 1:
        raise UncertaintyLabError("operator rows have unequal lengths")
    return np.array(rows, dtype=complex)


def encode_complex(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def encode_vector(v) -> list[list[float]]:
    return [encode_complex(z) for z in np.asarray(v).ravel()]


def encode_matrix(m) -> list[list[list[float]]]:
    return [encode_vector(row) for row in np.asarray(m)]


def admit_state(v: np.ndarray, name: str = "state") -> np.ndarray:
    """Normalize ``v`` if its norm is within :data:`LENIENT_NORM`, else reject it."""
    n = float(np.linalg.norm(v))
    if abs(n - 1.0) <= 1e-12:
        return v
    lo, hi = LENIENT_NORM
    if not lo <= n <= hi:
        raise NotNormalizedError(f"{name} has norm {n:.6g}, outside [{lo}, {hi}]")
    log.warning("%s has norm %.17g; normalizing", name, n)
    return v / n


def load_json(path: str):
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise UncertaintyLabError(f"{path}: malformed JSON ({exc})") from exc


def read_state_file(path: str) -> dict:
    """Return ``{"state": ..., "psi_perp": ... or None}`` from a JSON file."""
    data = load_json(path)
    if not isinstance(data, dict) or "state" not in data:
        raise UncertaintyLabError(f"{path}: missing top-level key 'state'")
    out = {"state": admit_state(decode_vector(data["state"]), "state"), "psi_perp": None}
    if data.get("psi_perp") is not None:
        out["psi_perp"] = admit_state(decode_vector(data["psi_perp"]), "psi_perp")
    return out


def read_operator_file(path: str) -> tuple[np.ndarray, np.ndarray]:
    data = load_json(path)
    if not isinstance(data, dict) or "A" not in data or "B" not in data:
        raise UncertaintyLabError(f"{path}: missing top-level keys 'A' and 'B'")
    return as_hermitian(decode_matrix(data["A"])), as_hermitian(decode_matrix(data["B"]))


def _finite(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        raise UncertaintyLabError(f"non-finite value {obj!r} in output")
    if isinstance(obj, dict):
        for v in obj.values():
            _finite(v)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            _finite(v)
    return obj


def dumps_json(obj) -> str:
    return json.dumps(_finite(obj), indent=2, allow_nan=False) + "\n"


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return "%.17g" % float(value)


def csv_text(header: list[str], rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def flatten(obj, prefix: str = "") -> list[tuple[str, object]]:
    """Flatten nested dicts/lists into ``(dotted.key, scalar)`` pairs."""
    out = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.extend(flatten(v, f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            out.extend(flatten(v, f"{prefix}.{i}" if prefix else str(i)))
    else:
        out.append((prefix, obj))
    return out


def key_value_csv(obj) -> str:
    lines = ["key,value"]
    for k, v in flatten(obj):
        lines.append(f"{k},{v if isinstance(v, str) else fmt(v)}")
    return "\n".join(lines) + "\n"
