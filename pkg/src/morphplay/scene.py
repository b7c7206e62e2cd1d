"""The house-model scene: parts, degrees of freedom, selection, pivot controls.

Scene documents are strict UTF-8 JSON (unknown keys rejected); loading
validates every structural invariant and reports failures with the part id and
field path. Scenes are immutable after load and safe for concurrent reads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Union

from .canonical import canonical_document
from .errors import SceneFormatError, SelectionRangeError
from .geometry import RigidTransform, PrincipalAxis, RotationSense, Vec3

FRAME_ORTHONORMAL_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class Box3:
    """Axis-aligned box; min <= max componentwise."""

    min: Vec3
    max: Vec3

    def __post_init__(self):
        if self.min.x > self.max.x or self.min.y > self.max.y or self.min.z > self.max.z:
            raise ValueError("bbox min exceeds max")

    @property
    def center(self) -> Vec3:
        return Vec3(
            0.5 * (self.min.x + self.max.x),
            0.5 * (self.min.y + self.max.y),
            0.5 * (self.min.z + self.max.z),
        )

    def contains(self, p: Vec3) -> bool:
        return (
            self.min.x <= p.x <= self.max.x
            and self.min.y <= p.y <= self.max.y
            and self.min.z <= p.z <= self.max.z
        )


@dataclass(frozen=True, slots=True)
class Part:
    """One transformable or fixed scene element; bbox is part-local."""

    id: str
    name: str
    bbox: Box3
    base_pose: RigidTransform
    mesh_ref: str | None = None


@dataclass(frozen=True, slots=True)
class Rotatable:
    """Hinge-style freedom: one axis, one sense, a pivot anchor, an angle range.

    ``anchor`` is part-local and must lie inside or on the part bbox;
    ``angle_range`` is (lo, hi) degrees with lo <= hi, within [-180, 180].
    """

    axis: PrincipalAxis
    sense: RotationSense
    anchor: Vec3
    angle_range: tuple[float, float]


@dataclass(frozen=True, slots=True)
class Translatable:
    """Free translation; constrained variants are not supported."""

    free: bool = True


@dataclass(frozen=True, slots=True)
class Fixed:
    pass


DoFConstraint = Union[Rotatable, Translatable, Fixed]


class Snap(Enum):
    """Per-axis pivot placement: snap to a bbox feature or a free offset."""

    MIN = "min"
    CENTER = "center"
    MAX = "max"
    FREE = "free"


SNAP_ORDER = (Snap.MIN, Snap.CENTER, Snap.MAX, Snap.FREE)


@dataclass(frozen=True, slots=True)
class PivotControls:
    """The six pivot-placement controls: one snap and one offset per axis.

    Offsets are part-local and only consulted when that axis's snap is FREE.
    """

    snap_x: Snap = Snap.MIN
    snap_y: Snap = Snap.MIN
    snap_z: Snap = Snap.MIN
    offset_x: float = 0.0
    offset_y: float = 0.0
    offset_z: float = 0.0

    def __post_init__(self):
        for v in (self.offset_x, self.offset_y, self.offset_z):
            if not math.isfinite(v):
                raise ValueError(f"pivot offset must be finite, got {v!r}")


@dataclass(frozen=True, slots=True)
class ResolvedPivot:
    """World-space pivot plus the clamp warning flag."""

    world: Vec3
    local: Vec3
    clamped: bool


@dataclass(frozen=True, slots=True)
class Selection:
    """A selected rotatable part with its pivot coordinate frame."""

    part_id: str
    origin: Vec3
    axes: tuple[Vec3, Vec3, Vec3]

    def __post_init__(self):
        for i, a in enumerate(self.axes):
            if abs(a.norm() - 1.0) > FRAME_ORTHONORMAL_TOL:
                raise ValueError("selection frame axes must be unit length")
            for b in self.axes[i + 1 :]:
                if abs(a.dot(b)) > FRAME_ORTHONORMAL_TOL:
                    raise ValueError("selection frame axes must be orthogonal")


@dataclass(frozen=True)
class Scene:
    """Immutable scene: ordered parts plus per-part degree-of-freedom map."""

    name: str
    parts: tuple[Part, ...]
    constraints: dict[str, DoFConstraint] = field(default_factory=dict)

    @property
    def rotatable_index(self) -> tuple[str, ...]:
        return tuple(p.id for p in self.parts if isinstance(self.constraints.get(p.id), Rotatable))

    @property
    def translatable_ids(self) -> tuple[str, ...]:
        return tuple(
            p.id for p in self.parts if isinstance(self.constraints.get(p.id), Translatable)
        )

    def part(self, part_id: str) -> Part | None:
        for p in self.parts:
            if p.id == part_id:
                return p
        return None

    def constraint(self, part_id: str) -> DoFConstraint:
        return self.constraints.get(part_id, Fixed())


def world_anchor(part: Part, constraint: Rotatable) -> Vec3:
    """The rotation anchor mapped from part-local to world space."""
    return part.base_pose.apply(constraint.anchor)


# --- document parsing -------------------------------------------------------

_WORLD_AXES = (Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1))


def _expect_keys(obj: dict, required: set[str], optional: set[str], path: str, part_id=None):
    unknown = set(obj) - required - optional
    if unknown:
        raise SceneFormatError(
            f"unknown key(s) {sorted(unknown)}", path=path, part_id=part_id
        )
    missing = required - set(obj)
    if missing:
        raise SceneFormatError(
            f"missing required key(s) {sorted(missing)}", path=path, part_id=part_id
        )


def _vec3(value: Any, path: str, part_id=None) -> Vec3:
    if not isinstance(value, list) or len(value) != 3:
        raise SceneFormatError("expected a 3-number array", path=path, part_id=part_id)
    try:
        return Vec3(*(float(v) for v in value))
    except (TypeError, ValueError) as exc:
        raise SceneFormatError(str(exc), path=path, part_id=part_id) from exc


def _string(value: Any, path: str, part_id=None) -> str:
    if not isinstance(value, str):
        raise SceneFormatError("expected a string", path=path, part_id=part_id)
    return value


def _pose(obj: Any, path: str, part_id: str) -> RigidTransform:
    if not isinstance(obj, dict):
        raise SceneFormatError("expected a pose object", path=path, part_id=part_id)
    _expect_keys(obj, {"rotation", "translation"}, set(), path, part_id)
    rot = obj["rotation"]
    if not isinstance(rot, list) or len(rot) != 9:
        raise SceneFormatError(
            "expected 9 row-major numbers", path=f"{path}.rotation", part_id=part_id
        )
    translation = _vec3(obj["translation"], f"{path}.translation", part_id)
    try:
        return RigidTransform(tuple(float(v) for v in rot), translation)
    except (TypeError, ValueError) as exc:
        raise SceneFormatError(str(exc), path=f"{path}.rotation", part_id=part_id) from exc


def _part(obj: Any, i: int) -> Part:
    path = f"parts[{i}]"
    if not isinstance(obj, dict):
        raise SceneFormatError("expected a part object", path=path)
    _expect_keys(obj, {"id", "name", "bbox", "pose"}, {"mesh_ref"}, path)
    part_id = _string(obj["id"], f"{path}.id")
    _expect_keys(obj["bbox"], {"min", "max"}, set(), f"{path}.bbox", part_id)
    try:
        bbox = Box3(
            _vec3(obj["bbox"]["min"], f"{path}.bbox.min", part_id),
            _vec3(obj["bbox"]["max"], f"{path}.bbox.max", part_id),
        )
    except ValueError as exc:
        raise SceneFormatError(str(exc), path=f"{path}.bbox", part_id=part_id) from exc
    mesh_ref = None
    if "mesh_ref" in obj:
        mesh_ref = _string(obj["mesh_ref"], f"{path}.mesh_ref", part_id)
    return Part(
        id=part_id,
        name=_string(obj["name"], f"{path}.name", part_id),
        bbox=bbox,
        base_pose=_pose(obj["pose"], f"{path}.pose", part_id),
        mesh_ref=mesh_ref,
    )


def _constraint(obj: Any, part: Part) -> DoFConstraint:
    path = f"constraints.{part.id}"
    if not isinstance(obj, dict):
        raise SceneFormatError("expected a constraint object", path=path, part_id=part.id)
    kind = obj.get("kind")
    if kind == "rotatable":
        _expect_keys(obj, {"kind", "axis", "sense", "anchor", "angle_range"}, set(), path, part.id)
        axis_name = _string(obj["axis"], f"{path}.axis", part.id)
        if axis_name not in ("x", "y", "z"):
            raise SceneFormatError(
                f"axis must be one of x/y/z, got {axis_name!r}", path=f"{path}.axis", part_id=part.id
            )
        sense_name = _string(obj["sense"], f"{path}.sense", part.id)
        if sense_name not in ("cw", "ccw"):
            raise SceneFormatError(
                f"sense must be cw or ccw, got {sense_name!r}", path=f"{path}.sense", part_id=part.id
            )
        anchor = _vec3(obj["anchor"], f"{path}.anchor", part.id)
        if not part.bbox.contains(anchor):
            raise SceneFormatError(
                f"anchor {anchor.as_tuple()} outside part bbox", path=f"{path}.anchor", part_id=part.id
            )
        rng = obj["angle_range"]
        if not isinstance(rng, list) or len(rng) != 2:
            raise SceneFormatError(
                "expected [lo, hi]", path=f"{path}.angle_range", part_id=part.id
            )
        lo, hi = float(rng[0]), float(rng[1])
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
            raise SceneFormatError(
                f"invalid range [{lo}, {hi}]", path=f"{path}.angle_range", part_id=part.id
            )
        if lo < -180.0 or hi > 180.0:
            raise SceneFormatError(
                f"range [{lo}, {hi}] outside [-180, 180]",
                path=f"{path}.angle_range",
                part_id=part.id,
            )
        return Rotatable(PrincipalAxis(axis_name), RotationSense(sense_name), anchor, (lo, hi))
    if kind == "translatable":
        _expect_keys(obj, {"kind"}, {"free"}, path, part.id)
        if obj.get("free", True) is not True:
            raise SceneFormatError(
                "only free translation is supported", path=f"{path}.free", part_id=part.id
            )
        return Translatable()
    if kind == "fixed":
        _expect_keys(obj, {"kind"}, set(), path, part.id)
        return Fixed()
    raise SceneFormatError(
        f"unknown constraint kind {kind!r}", path=f"{path}.kind", part_id=part.id
    )


def load_scene(doc: bytes | str) -> Scene:
    """Parse and validate a scene document; part order follows the document."""
    if isinstance(doc, bytes):
        try:
            doc = doc.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SceneFormatError(f"not valid UTF-8: {exc}") from exc
    try:
        raw = json.loads(doc)
    except json.JSONDecodeError as exc:
        raise SceneFormatError(f"malformed JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise SceneFormatError("top level must be an object")
    _expect_keys(raw, {"name", "parts", "constraints"}, set(), "$")
    name = _string(raw["name"], "name")
    if not isinstance(raw["parts"], list):
        raise SceneFormatError("expected an array", path="parts")
    parts = tuple(_part(p, i) for i, p in enumerate(raw["parts"]))
    seen: set[str] = set()
    for i, p in enumerate(parts):
        if p.id in seen:
            raise SceneFormatError(
                f"duplicate part id {p.id!r}", path=f"parts[{i}].id", part_id=p.id
            )
        seen.add(p.id)
    if not isinstance(raw["constraints"], dict):
        raise SceneFormatError("expected an object", path="constraints")
    by_id = {p.id: p for p in parts}
    constraints: dict[str, DoFConstraint] = {p.id: Fixed() for p in parts}
    for pid, cobj in raw["constraints"].items():
        if pid not in by_id:
            raise SceneFormatError(
                f"constraint references unknown part {pid!r}", path=f"constraints.{pid}"
            )
        constraints[pid] = _constraint(cobj, by_id[pid])
    return Scene(name=name, parts=parts, constraints=constraints)


def scene_to_dict(scene: Scene) -> dict:
    """Plain-data form of a scene in document schema shape."""
    parts = []
    for p in scene.parts:
        obj: dict[str, Any] = {
            "id": p.id,
            "name": p.name,
            "bbox": {"min": list(p.bbox.min.as_tuple()), "max": list(p.bbox.max.as_tuple())},
            "pose": {
                "rotation": list(p.base_pose.rotation),
                "translation": list(p.base_pose.translation.as_tuple()),
            },
        }
        if p.mesh_ref is not None:
            obj["mesh_ref"] = p.mesh_ref
        parts.append(obj)
    constraints: dict[str, Any] = {}
    for pid in (p.id for p in scene.parts):
        c = scene.constraint(pid)
        if isinstance(c, Rotatable):
            constraints[pid] = {
                "kind": "rotatable",
                "axis": c.axis.value,
                "sense": c.sense.value,
                "anchor": list(c.anchor.as_tuple()),
                "angle_range": list(c.angle_range),
            }
        elif isinstance(c, Translatable):
            constraints[pid] = {"kind": "translatable"}
        else:
            constraints[pid] = {"kind": "fixed"}
    return {"name": scene.name, "parts": parts, "constraints": constraints}


def serialize_scene(scene: Scene) -> str:
    """Canonical scene document: sorted keys, 9-significant-digit numbers."""
    return canonical_document(scene_to_dict(scene))


def select_part(scene: Scene, index: int) -> Selection:
    """Select the index-th rotatable part; pivot frame sits at its anchor."""
    rotatables = scene.rotatable_index
    if not 0 <= index < len(rotatables):
        raise SelectionRangeError(index, len(rotatables))
    part_id = rotatables[index]
    part = scene.part(part_id)
    constraint = scene.constraint(part_id)
    assert part is not None and isinstance(constraint, Rotatable)
    return Selection(part_id=part_id, origin=world_anchor(part, constraint), axes=_WORLD_AXES)


def resolve_pivot(part: Part, controls: PivotControls) -> ResolvedPivot:
    """Resolve the six pivot controls to a world point; FREE offsets clamp."""
    local = []
    clamped = False
    for snap, offset, lo, hi in (
        (controls.snap_x, controls.offset_x, part.bbox.min.x, part.bbox.max.x),
        (controls.snap_y, controls.offset_y, part.bbox.min.y, part.bbox.max.y),
        (controls.snap_z, controls.offset_z, part.bbox.min.z, part.bbox.max.z),
    ):
        if snap is Snap.MIN:
            local.append(lo)
        elif snap is Snap.CENTER:
            local.append(0.5 * (lo + hi))
        elif snap is Snap.MAX:
            local.append(hi)
        else:
            value = min(max(offset, lo), hi)
            if value != offset:
                clamped = True
            local.append(value)
    local_point = Vec3(*local)
    return ResolvedPivot(world=part.base_pose.apply(local_point), local=local_point, clamped=clamped)
