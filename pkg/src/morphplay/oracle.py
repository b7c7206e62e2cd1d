"""Independent transform oracle used for cross-checking and fixture generation.

General-axis Rodrigues rotation assembled into a 4x4 homogeneous pipeline
T(pivot) @ R @ T(-pivot). Deliberately shares no code with
:mod:`morphplay.geometry`: that module uses per-axis closed forms, this one is
the second, structurally different route the test suite compares against.
"""

from __future__ import annotations

import math

import numpy as np


def rodrigues_matrix(axis: np.ndarray, theta_rad: float) -> np.ndarray:
    """3x3 rotation about the (normalized) ``axis`` by ``theta_rad``.

    R = I cos(t) + sin(t) [u]x + (1 - cos(t)) u u^T
    """
    u = np.asarray(axis, dtype=np.float64)
    n = math.sqrt(float(u @ u))
    if n == 0.0:
        raise ValueError("rotation axis must be non-zero")
    u = u / n
    c, s = math.cos(theta_rad), math.sin(theta_rad)
    ux = np.array(
        [
            [0.0, -u[2], u[1]],
            [u[2], 0.0, -u[0]],
            [-u[1], u[0], 0.0],
        ]
    )
    return c * np.eye(3) + s * ux + (1.0 - c) * np.outer(u, u)


def homogeneous_translation(t: np.ndarray) -> np.ndarray:
    m = np.eye(4)
    m[:3, 3] = np.asarray(t, dtype=np.float64)
    return m


def homogeneous_rotation(axis: np.ndarray, theta_rad: float, pivot: np.ndarray) -> np.ndarray:
    """4x4 matrix rotating about the axis line through ``pivot``."""
    r = np.eye(4)
    r[:3, :3] = rodrigues_matrix(axis, theta_rad)
    return homogeneous_translation(pivot) @ r @ homogeneous_translation(-np.asarray(pivot, dtype=np.float64))


def apply_homogeneous(m: np.ndarray, point: np.ndarray) -> np.ndarray:
    """Apply a 4x4 homogeneous matrix to one 3-vector."""
    p = np.ones(4)
    p[:3] = np.asarray(point, dtype=np.float64)
    out = np.asarray(m, dtype=np.float64) @ p
    return out[:3]


_AXES = {"x": (1.0, 0.0, 0.0), "y": (0.0, 1.0, 0.0), "z": (0.0, 0.0, 1.0)}


def rotate_point(
    point: tuple[float, float, float],
    axis_name: str,
    sense_name: str,
    angle_deg: float,
    pivot: tuple[float, float, float],
) -> tuple[float, float, float]:
    """Rotate one point; sense 'ccw' keeps the angle, 'cw' negates it."""
    if axis_name not in _AXES:
        raise ValueError(f"unknown axis {axis_name!r}")
    if sense_name not in ("cw", "ccw"):
        raise ValueError(f"unknown sense {sense_name!r}")
    theta = math.radians(angle_deg if sense_name == "ccw" else -angle_deg)
    m = homogeneous_rotation(np.array(_AXES[axis_name]), theta, np.array(pivot))
    out = apply_homogeneous(m, np.array(point))
    return (float(out[0]), float(out[1]), float(out[2]))


def translate_point(
    point: tuple[float, float, float], t: tuple[float, float, float]
) -> tuple[float, float, float]:
    m = homogeneous_translation(np.array(t))
    out = apply_homogeneous(m, np.array(point))
    return (float(out[0]), float(out[1]), float(out[2]))
