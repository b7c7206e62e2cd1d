"""Feasibility feedback: is a requested transformation physically realizable?

The preview pose is always computed regardless of the verdict: the gap
between what the virtual model shows and what the physical part allows is the
lesson. Checks run in a fixed order (existence, kind, axis, sense, pivot,
angle range) so feedback names the most fundamental mismatch first; that order
is part of the contract.

Direction is judged on the effective signed angle, never the raw sense toggle,
so the two encodings of one geometry always receive the same verdict. A zero
effective angle passes the direction check unconditionally.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import annotations as ann
from .geometry import (
    RigidTransform,
    RotationSpec,
    Vec3,
    compose,
    rotation_about_pivot_transform,
    translation_transform,
)
from .scene import Part, Rotatable, Scene, Translatable, world_anchor

DEFAULT_PIVOT_TOLERANCE = 0.05


class VerdictStatus(Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"


class InfeasibleReason(Enum):
    NOT_ROTATABLE = "not-rotatable"
    NOT_TRANSLATABLE = "not-translatable"
    WRONG_AXIS = "wrong-axis"
    WRONG_DIRECTION = "wrong-direction"
    WRONG_PIVOT = "wrong-pivot"
    ANGLE_OUT_OF_RANGE = "angle-out-of-range"
    UNKNOWN_PART = "unknown-part"


@dataclass(frozen=True, slots=True)
class Verdict:
    """Feasibility outcome; ``reason`` is present iff infeasible."""

    status: VerdictStatus
    reason: InfeasibleReason | None
    detail: str

    def __post_init__(self):
        if (self.reason is None) != (self.status is VerdictStatus.FEASIBLE):
            raise ValueError("reason must be present exactly when infeasible")

    @property
    def feasible(self) -> bool:
        return self.status is VerdictStatus.FEASIBLE


def feasible(detail: str = "matches the physical constraint") -> Verdict:
    return Verdict(VerdictStatus.FEASIBLE, None, detail)


def infeasible(reason: InfeasibleReason, detail: str) -> Verdict:
    return Verdict(VerdictStatus.INFEASIBLE, reason, detail)


@dataclass(frozen=True, slots=True)
class RotationRequest:
    """A rotation to test: spec pivot is in world space."""

    part_id: str
    spec: RotationSpec


@dataclass(frozen=True, slots=True)
class TranslationRequest:
    part_id: str
    t: Vec3


@dataclass(frozen=True, slots=True)
class PreviewResult:
    """Always-computed preview pose, the verdict, and annotation geometry."""

    part_id: str
    preview_pose: RigidTransform
    verdict: Verdict
    annotations: tuple[ann.Annotation, ...]


def check_rotation(
    scene: Scene, req: RotationRequest, pivot_tolerance: float = DEFAULT_PIVOT_TOLERANCE
) -> Verdict:
    """Ordered checks; the first failure wins.

    The pivot check compares points, so a pivot displaced along the rotation
    axis is reported WrongPivot even though it produces the same motion; the
    physical anchor is a specific corner, and naming it is the point.
    """
    if pivot_tolerance <= 0:
        raise ValueError(f"pivot tolerance must be positive, got {pivot_tolerance}")
    part = scene.part(req.part_id)
    if part is None:
        return infeasible(InfeasibleReason.UNKNOWN_PART, f"no part {req.part_id!r} in scene")
    constraint = scene.constraint(req.part_id)
    if not isinstance(constraint, Rotatable):
        return infeasible(
            InfeasibleReason.NOT_ROTATABLE, f"{req.part_id} does not rotate in the physical model"
        )
    if req.spec.axis is not constraint.axis:
        return infeasible(
            InfeasibleReason.WRONG_AXIS,
            f"{req.part_id} only rotates about {constraint.axis.value}, not {req.spec.axis.value}",
        )
    theta = req.spec.theta_eff_deg
    if theta != 0.0 and (theta > 0) != (constraint.sense.sign > 0):
        return infeasible(
            InfeasibleReason.WRONG_DIRECTION,
            f"{req.part_id} only rotates {constraint.sense.value}",
        )
    anchor = world_anchor(part, constraint)
    distance = (req.spec.pivot - anchor).norm()
    if distance > pivot_tolerance:
        return infeasible(
            InfeasibleReason.WRONG_PIVOT,
            f"pivot is {distance:.3f} units from the physical hinge (tolerance {pivot_tolerance})",
        )
    lo, hi = constraint.angle_range
    if not lo <= theta <= hi:
        return infeasible(
            InfeasibleReason.ANGLE_OUT_OF_RANGE,
            f"effective angle {theta:.1f} outside [{lo:.1f}, {hi:.1f}]",
        )
    return feasible()


def check_translation(scene: Scene, req: TranslationRequest) -> Verdict:
    part = scene.part(req.part_id)
    if part is None:
        return infeasible(InfeasibleReason.UNKNOWN_PART, f"no part {req.part_id!r} in scene")
    if not isinstance(scene.constraint(req.part_id), Translatable):
        return infeasible(
            InfeasibleReason.NOT_TRANSLATABLE,
            f"{req.part_id} does not translate in the physical model",
        )
    return feasible()


def _annotation_radius(part: Part) -> float:
    extent = part.bbox.max - part.bbox.min
    return max(0.5 * max(extent.x, extent.y, extent.z), 0.5)


def _verdict_color(verdict: Verdict) -> ann.ColorHint:
    return ann.ColorHint.FEASIBLE if verdict.feasible else ann.ColorHint.INFEASIBLE


def apply_request(
    scene: Scene,
    req: RotationRequest | TranslationRequest,
    pivot_tolerance: float = DEFAULT_PIVOT_TOLERANCE,
) -> PreviewResult:
    """Compute preview pose + verdict + annotations for a request.

    The preview applies the requested world-space motion on top of the part's
    base pose even when infeasible; only an unknown part yields no preview.
    Sweep arcs and arrows are tinted by the verdict, the pivot triad keeps its
    axis color.
    """
    part = scene.part(req.part_id)
    if part is None:
        verdict = (
            check_rotation(scene, req, pivot_tolerance)
            if isinstance(req, RotationRequest)
            else check_translation(scene, req)
        )
        return PreviewResult(req.part_id, RigidTransform.identity(), verdict, ())

    if isinstance(req, RotationRequest):
        verdict = check_rotation(scene, req, pivot_tolerance)
        motion = rotation_about_pivot_transform(req.spec)
        marks = ann.rotation_annotation(req.spec, _annotation_radius(part))
        color = _verdict_color(verdict)
        marks = [m if m.kind is ann.AnnotationKind.TRIAD else m.recolored(color) for m in marks]
    else:
        verdict = check_translation(scene, req)
        motion = translation_transform(req.t)
        origin = part.base_pose.apply(part.bbox.center)
        color = _verdict_color(verdict)
        marks = [m.recolored(color) for m in ann.translation_annotation(origin, req.t)]

    return PreviewResult(req.part_id, compose(motion, part.base_pose), verdict, tuple(marks))
