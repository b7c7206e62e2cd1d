"""Batch point-transform kernels with backend selection at import.

Prefers the compiled Cython extension; falls back to the vectorized numpy
implementation when the extension is unavailable or when the environment
variable ``MORPHPLAY_PURE_KERNELS`` is set to a non-empty value.

Both backends share one contract:

    rotate_points(points, rotation, pivot)  -> new (n, 3) float64 array
    translate_points(points, delta)         -> new (n, 3) float64 array

``benchmarks/bench_kernels.py`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np

from . import pure

if os.environ.get("MORPHPLAY_PURE_KERNELS"):
    _impl = pure
    BACKEND = "pure"
else:
    try:
        from . import _batch as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = pure
        BACKEND = "pure"


def rotate_points(points: np.ndarray, rotation: np.ndarray, pivot: np.ndarray) -> np.ndarray:
    """Rotate each row of ``points`` about ``pivot``: R @ (p - pivot) + pivot."""
    pts = np.ascontiguousarray(points, dtype=np.float64)
    rot = np.ascontiguousarray(rotation, dtype=np.float64)
    piv = np.ascontiguousarray(pivot, dtype=np.float64)
    return _impl.rotate_points(pts, rot, piv)


def translate_points(points: np.ndarray, delta: np.ndarray) -> np.ndarray:
    """Add ``delta`` to each row of ``points``."""
    pts = np.ascontiguousarray(points, dtype=np.float64)
    d = np.ascontiguousarray(delta, dtype=np.float64)
    return _impl.translate_points(pts, d)
