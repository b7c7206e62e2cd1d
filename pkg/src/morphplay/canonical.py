"""Canonical JSON used for scene documents, snapshots, and golden transcripts.

Sorted keys, compact separators, floats reduced to at most 9 significant
digits, no NaN/Inf, -0.0 normalized to 0.0. Two structurally equal values
always serialize to identical bytes, which is what the byte-diff golden tests
rely on.
"""

from __future__ import annotations

import json
import math
from typing import Any


def canonical_number(x: float) -> float:
    """Round a float to 9 significant digits (returned as float)."""
    if not math.isfinite(x):
        raise ValueError(f"non-finite number in canonical document: {x!r}")
    if x == 0.0:
        return 0.0
    return float(format(x, ".9g"))


def _canonicalize(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return canonical_number(value)
    if isinstance(value, (list, tuple)):
        return [_canonicalize(v) for v in value]
    if isinstance(value, dict):
        out = {}
        for k, v in value.items():
            if not isinstance(k, str):
                raise TypeError(f"canonical documents use string keys, got {k!r}")
            out[k] = _canonicalize(v)
        return out
    if isinstance(value, str):
        return value
    raise TypeError(f"cannot canonicalize {type(value).__name__}")


def canonical_dumps(value: Any) -> str:
    """One-line canonical JSON (no trailing newline)."""
    return json.dumps(_canonicalize(value), sort_keys=True, separators=(",", ":"), allow_nan=False)


def canonical_document(value: Any) -> str:
    """Canonical JSON document: newline-terminated."""
    return canonical_dumps(value) + "\n"
