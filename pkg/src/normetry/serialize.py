"""JSON serialization of matrices, cases, and reports.

Matrices are stored as {n, re, im} with row-major entry arrays; Python's
shortest-roundtrip float repr makes the encoding bit-faithful, so replayed
certificates recompute margins exactly.
"""

from __future__ import annotations

import hashlib
import json

import numpy as np

from .errors import BadSpec


def mat_to_json(m) -> dict:
    a = np.asarray(m, dtype=complex)
    n = a.shape[0]
    return {
        "n": n,
        "re": [float(v) for v in a.real.ravel()],
        "im": [float(v) for v in a.imag.ravel()],
    }


def mat_from_json(d: dict) -> np.ndarray:
    try:
        n = int(d["n"])
        re = np.asarray(d["re"], dtype=float).reshape(n, n)
        im = np.asarray(d["im"], dtype=float).reshape(n, n)
    except (KeyError, TypeError, ValueError) as exc:
        raise BadSpec(f"malformed matrix object: {exc}") from exc
    return re + 1j * im


def canonical_dumps(obj) -> str:
    """Deterministic JSON encoding (sorted keys, no whitespace)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def fingerprint(obj) -> str:
    """Short stable hash of a JSON-serializable object."""
    return hashlib.sha256(canonical_dumps(obj).encode()).hexdigest()[:16]
