"""Rigid 3D transformation math: translation, rotation about a pivot, composition.

Rotations are restricted to the principal axes X/Y/Z and built from exact
closed forms. The sense convention is fixed package-wide:

    CCW is the positive right-hand-rule angle about the axis's +direction
    (thumb along +axis, fingers curl counterclockwise seen from the positive
    end looking toward the origin); CW negates the angle.

The effective signed angle of a (sense, angle) pair is therefore
``theta_eff = +angle`` for CCW and ``-angle`` for CW. Feasibility checks and
annotations both operate on ``theta_eff``, never on the raw enum, so the two
redundant encodings of one geometry always behave identically.

All math is 64-bit floating point; default comparison tolerance is 1e-9.
Everything here is pure and immutable, safe for unrestricted concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from . import kernels

ORTHONORMAL_TOL = 1e-9
DET_TOL = 1e-9


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True, slots=True)
class Vec3:
    """Immutable 3D vector in scene units. Components must be finite."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "z", float(self.z))
        _require_finite("Vec3 component", self.x, self.y, self.z)

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Vec3":
        return Vec3(-self.x, -self.y, -self.z)

    def __mul__(self, s: float) -> "Vec3":
        return Vec3(self.x * s, self.y * s, self.z * s)

    __rmul__ = __mul__

    def dot(self, other: "Vec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def norm(self) -> float:
        return math.sqrt(self.dot(self))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=np.float64)

    @classmethod
    def from_sequence(cls, seq: Sequence[float]) -> "Vec3":
        if len(seq) != 3:
            raise ValueError(f"expected 3 components, got {len(seq)}")
        return cls(float(seq[0]), float(seq[1]), float(seq[2]))


ZERO = Vec3(0.0, 0.0, 0.0)


class PrincipalAxis(Enum):
    """The three principal rotation axes."""

    X = "x"
    Y = "y"
    Z = "z"

    @property
    def index(self) -> int:
        return "xyz".index(self.value)

    @property
    def direction(self) -> Vec3:
        v = [0.0, 0.0, 0.0]
        v[self.index] = 1.0
        return Vec3(*v)

    @property
    def next_cyclic(self) -> "PrincipalAxis":
        """Cyclic successor X->Y->Z->X (canonical arc start direction)."""
        order = (PrincipalAxis.X, PrincipalAxis.Y, PrincipalAxis.Z)
        return order[(self.index + 1) % 3]


class RotationSense(Enum):
    """Rotation direction; CCW is right-hand-rule positive about the +axis."""

    CW = "cw"
    CCW = "ccw"

    @property
    def sign(self) -> float:
        return 1.0 if self is RotationSense.CCW else -1.0


@dataclass(frozen=True, slots=True)
class AngleDeg:
    """Rotation angle in degrees, restricted to [-180, +180]."""

    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        _require_finite("angle", self.value)
        if not -180.0 <= self.value <= 180.0:
            raise ValueError(f"angle {self.value} outside [-180, 180]")

    def __float__(self) -> float:
        return self.value

    @classmethod
    def coerce(cls, value: "AngleDeg | float") -> "AngleDeg":
        return value if isinstance(value, AngleDeg) else cls(value)


@dataclass(frozen=True, slots=True)
class RotationSpec:
    """Full parameter set of one rotation: axis, sense, angle, pivot."""

    axis: PrincipalAxis
    sense: RotationSense
    angle: AngleDeg
    pivot: Vec3

    def __post_init__(self):
        object.__setattr__(self, "angle", AngleDeg.coerce(self.angle))

    @property
    def theta_eff_deg(self) -> float:
        """Signed effective angle: +angle for CCW, -angle for CW."""
        return self.sense.sign * self.angle.value


@dataclass(frozen=True, slots=True)
class RigidTransform:
    """Proper rigid motion: p -> R @ p + t.

    ``rotation`` is stored as 9 row-major floats so instances hash and compare
    structurally; it must be orthonormal with determinant +1 (tolerance 1e-9).
    """

    rotation: tuple[float, ...]
    translation: Vec3

    def __post_init__(self):
        rot = tuple(float(v) for v in self.rotation)
        if len(rot) != 9:
            raise ValueError(f"rotation needs 9 row-major entries, got {len(rot)}")
        _require_finite("rotation entry", *rot)
        object.__setattr__(self, "rotation", rot)
        m = self.matrix
        if np.abs(m.T @ m - np.eye(3)).max() >= ORTHONORMAL_TOL:
            raise ValueError("rotation matrix is not orthonormal")
        if abs(float(np.linalg.det(m)) - 1.0) >= DET_TOL:
            raise ValueError("rotation matrix is not a proper rotation (det != 1)")

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.rotation, dtype=np.float64).reshape(3, 3)

    @classmethod
    def identity(cls) -> "RigidTransform":
        return cls((1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0), ZERO)

    @classmethod
    def from_matrix(cls, rotation: np.ndarray, translation: Vec3) -> "RigidTransform":
        rot = np.asarray(rotation, dtype=np.float64)
        if rot.shape != (3, 3):
            raise ValueError(f"expected a 3x3 rotation matrix, got shape {rot.shape}")
        return cls(tuple(float(v) for v in rot.reshape(-1)), translation)

    def apply(self, p: Vec3) -> Vec3:
        m = self.matrix
        v = m @ p.as_array() + self.translation.as_array()
        return Vec3(float(v[0]), float(v[1]), float(v[2]))

    def apply_points(self, points: np.ndarray) -> np.ndarray:
        """Transform an (n, 3) array; routed through the batch kernel."""
        rotated = kernels.rotate_points(points, self.matrix, np.zeros(3))
        return kernels.translate_points(rotated, self.translation.as_array())

    def almost_equal(self, other: "RigidTransform", tol: float = 1e-9) -> bool:
        if max(abs(a - b) for a, b in zip(self.rotation, other.rotation)) > tol:
            return False
        d = self.translation - other.translation
        return max(abs(d.x), abs(d.y), abs(d.z)) <= tol


IDENTITY = RigidTransform.identity()


def translate(points: Iterable[Vec3], t: Vec3) -> list[Vec3]:
    """Translate every point by ``t``; input is left unmodified."""
    pts = list(points)
    if not pts:
        return []
    arr = np.array([p.as_tuple() for p in pts], dtype=np.float64)
    out = kernels.translate_points(arr, t.as_array())
    return [Vec3(float(r[0]), float(r[1]), float(r[2])) for r in out]


def axis_rotation_matrix(
    axis: PrincipalAxis, sense: RotationSense, angle: AngleDeg | float
) -> np.ndarray:
    """Rotation matrix for the effective angle sense.sign * angle.

    Exact closed forms per axis; the general Rodrigues form deliberately lives
    only in :mod:`morphplay.oracle`.
    """
    theta = math.radians(sense.sign * AngleDeg.coerce(angle).value)
    c, s = math.cos(theta), math.sin(theta)
    if axis is PrincipalAxis.X:
        rows = [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]]
    elif axis is PrincipalAxis.Y:
        rows = [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]]
    else:
        rows = [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
    return np.array(rows, dtype=np.float64)


def rotate_about_pivot(points: Iterable[Vec3], spec: RotationSpec) -> list[Vec3]:
    """Rotate every point about spec.pivot: R @ (p - pivot) + pivot."""
    pts = list(points)
    if not pts:
        return []
    rot = axis_rotation_matrix(spec.axis, spec.sense, spec.angle)
    arr = np.array([p.as_tuple() for p in pts], dtype=np.float64)
    out = kernels.rotate_points(arr, rot, spec.pivot.as_array())
    return [Vec3(float(r[0]), float(r[1]), float(r[2])) for r in out]


def rotation_about_pivot_transform(spec: RotationSpec) -> RigidTransform:
    """The rotation of ``spec`` as a single rigid transform."""
    rot = axis_rotation_matrix(spec.axis, spec.sense, spec.angle)
    pivot = spec.pivot.as_array()
    t = pivot - rot @ pivot
    return RigidTransform.from_matrix(rot, Vec3(float(t[0]), float(t[1]), float(t[2])))


def translation_transform(t: Vec3) -> RigidTransform:
    return RigidTransform(IDENTITY.rotation, t)


def compose(a: RigidTransform, b: RigidTransform) -> RigidTransform:
    """Transform applying ``b`` first, then ``a``: compose(a, b)(p) = a(b(p))."""
    rot = a.matrix @ b.matrix
    t = a.matrix @ b.translation.as_array() + a.translation.as_array()
    return RigidTransform.from_matrix(rot, Vec3(float(t[0]), float(t[1]), float(t[2])))


def invert(t: RigidTransform) -> RigidTransform:
    """Inverse motion: invert(t)(t(p)) == p."""
    rinv = t.matrix.T
    ti = -(rinv @ t.translation.as_array())
    return RigidTransform.from_matrix(rinv, Vec3(float(ti[0]), float(ti[1]), float(ti[2])))
