"""Vectorized numpy fallback for the batch point-transform kernels.

Same contract as the compiled ``_batch`` extension: float64 C-contiguous
(n, 3) arrays in, freshly allocated (n, 3) array out.
"""

from __future__ import annotations

import numpy as np


def rotate_points(points: np.ndarray, rotation: np.ndarray, pivot: np.ndarray) -> np.ndarray:
    """R @ (p - pivot) + pivot for every row p."""
    return (points - pivot) @ rotation.T + pivot


def translate_points(points: np.ndarray, delta: np.ndarray) -> np.ndarray:
    return points + delta
