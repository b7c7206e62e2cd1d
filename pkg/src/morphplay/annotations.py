"""Renderable annotation geometry: arrows, rotation arcs, pivot triads, labels.

Pure data for any client to draw; deterministic for identical inputs. Lengths
label with 3 decimals, angles with a signed single decimal; these strings are
protocol-stable and frozen by golden transcripts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .geometry import PrincipalAxis, RotationSpec, Vec3

NEGLIGIBLE = 1e-9
MAX_ARC_STEP_DEG = 5.0


class AnnotationKind(Enum):
    ARROW = "arrow"
    ARC = "arc"
    TRIAD = "triad"
    LABEL = "label"


class ColorHint(Enum):
    AXIS_X = "axis-x"
    AXIS_Y = "axis-y"
    AXIS_Z = "axis-z"
    NEUTRAL = "neutral"
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"


_AXIS_COLOR = {
    PrincipalAxis.X: ColorHint.AXIS_X,
    PrincipalAxis.Y: ColorHint.AXIS_Y,
    PrincipalAxis.Z: ColorHint.AXIS_Z,
}


@dataclass(frozen=True, slots=True)
class Annotation:
    """One drawable abstraction; ``points`` are world-space samples.

    Arrows carry exactly tail and head; triads carry three origin-tip pairs;
    arcs carry at least two circle samples. Label text is mandatory for
    labels and for magnitude/angle-bearing arrows and arcs.
    """

    kind: AnnotationKind
    points: tuple[Vec3, ...]
    anchor: Vec3
    text: str | None = None
    color_hint: ColorHint = ColorHint.NEUTRAL

    def __post_init__(self):
        n = len(self.points)
        if self.kind is AnnotationKind.ARROW and n != 2:
            raise ValueError(f"arrow needs exactly 2 points, got {n}")
        if self.kind is AnnotationKind.ARC and n < 2:
            raise ValueError(f"arc needs at least 2 points, got {n}")
        if self.kind is AnnotationKind.TRIAD and n != 6:
            raise ValueError(f"triad needs exactly 6 points, got {n}")
        if self.kind is AnnotationKind.LABEL and not self.text:
            raise ValueError("label needs text")

    def recolored(self, color_hint: ColorHint) -> "Annotation":
        return Annotation(self.kind, self.points, self.anchor, self.text, color_hint)


def format_length(value: float) -> str:
    return f"{value:.3f}"


def format_angle(theta_deg: float) -> str:
    return f"{theta_deg:+.1f}°"


def triad_annotation(
    origin: Vec3, arm_length: float, color_hint: ColorHint = ColorHint.NEUTRAL
) -> Annotation:
    """Coordinate triad: three origin-tip segments along the world axes."""
    if arm_length <= 0:
        raise ValueError(f"arm length must be positive, got {arm_length}")
    points = []
    for axis in PrincipalAxis:
        points.append(origin)
        points.append(origin + axis.direction * arm_length)
    return Annotation(AnnotationKind.TRIAD, tuple(points), origin, None, color_hint)


def translation_annotation(origin: Vec3, t: Vec3) -> list[Annotation]:
    """Arrow from origin along t plus a magnitude label; empty for ~zero t."""
    magnitude = t.norm()
    if magnitude <= NEGLIGIBLE:
        return []
    head = origin + t
    midpoint = origin + t * 0.5
    return [
        Annotation(AnnotationKind.ARROW, (origin, head), origin, format_length(magnitude)),
        Annotation(AnnotationKind.LABEL, (midpoint,), midpoint, format_length(magnitude)),
    ]


def rotation_annotation(spec: RotationSpec, radius: float) -> list[Annotation]:
    """Pivot triad plus, for a non-zero sweep, an arc and signed angle label.

    The arc lies on the circle of ``radius`` around the pivot in the plane
    perpendicular to the axis, swept from the canonical start direction (the
    cyclically next world axis: X->Y, Y->Z, Z->X) through theta_eff, sampled
    every <= 5 degrees with exact endpoints.
    """
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    out = [triad_annotation(spec.pivot, radius, _AXIS_COLOR[spec.axis])]
    theta = spec.theta_eff_deg
    if abs(theta) <= NEGLIGIBLE:
        return out
    u = spec.axis.next_cyclic.direction
    axis_dir = spec.axis.direction
    # v = axis x u completes the right-handed basis, so +phi sweeps CCW
    v = Vec3(
        axis_dir.y * u.z - axis_dir.z * u.y,
        axis_dir.z * u.x - axis_dir.x * u.z,
        axis_dir.x * u.y - axis_dir.y * u.x,
    )
    steps = max(1, math.ceil(abs(theta) / MAX_ARC_STEP_DEG))
    samples = []
    for i in range(steps + 1):
        phi = math.radians(theta * i / steps)
        samples.append(spec.pivot + u * (radius * math.cos(phi)) + v * (radius * math.sin(phi)))
    label_anchor = samples[len(samples) // 2]
    out.append(Annotation(AnnotationKind.ARC, tuple(samples), spec.pivot, format_angle(theta)))
    out.append(
        Annotation(AnnotationKind.LABEL, (label_anchor,), label_anchor, format_angle(theta))
    )
    return out
