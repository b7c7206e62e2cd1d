"""Live parameter sessions: the slider/toggle/selector state machine.

A session binds one scene to one mode (translation or rotation), holds the
current parameter values, and turns accepted changes into broadcasts carrying
the new state, the recomputed preview, and its feasibility verdict. Message
handling is pure: ``handle_message(state, msg) -> (new state, outbound)``;
the transport feeds each session a single ordered stream, so seq numbers give
every client the same total order. Every accepted change bumps seq, including
value no-ops, which keeps client reconciliation trivial.

Rejected messages produce sender-only ``error`` messages with a stable code
(unknown_param, out_of_bounds, off_step, bad_type, out_of_range, bad_mode,
bad_payload, unknown_type, stale_seq, unknown_session) and never change state.
"""

from __future__ import annotations

import json
import math
import uuid
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Union

from .canonical import canonical_document
from .errors import ProtocolError, SelectionRangeError
from .feasibility import PreviewResult, RotationRequest, TranslationRequest, apply_request
from .geometry import AngleDeg, PrincipalAxis, RotationSense, RotationSpec, Vec3
from .protocol import (
    Message,
    Outbound,
    preview_payload,
    scene_payload,
    selection_to_dict,
    verdict_to_dict,
)
from .scene import (
    PivotControls,
    Scene,
    Selection,
    SNAP_ORDER,
    resolve_pivot,
    select_part,
)

STEP_TOL = 1e-9

AXIS_ORDER = (PrincipalAxis.X, PrincipalAxis.Y, PrincipalAxis.Z)


class Mode(Enum):
    TRANSLATION = "translation"
    ROTATION = "rotation"


@dataclass(frozen=True, slots=True)
class Slider:
    min: float
    max: float
    step: float

    def __post_init__(self):
        if not self.min < self.max:
            raise ValueError(f"slider needs min < max, got [{self.min}, {self.max}]")
        if self.step <= 0:
            raise ValueError(f"slider step must be positive, got {self.step}")


@dataclass(frozen=True, slots=True)
class Toggle:
    pass


@dataclass(frozen=True, slots=True)
class IndexSelector:
    count: int

    def __post_init__(self):
        if self.count < 0:
            raise ValueError(f"selector count must be >= 0, got {self.count}")


ParamKind = Union[Slider, Toggle, IndexSelector]


@dataclass(frozen=True, slots=True)
class ParamDef:
    id: str
    kind: ParamKind
    label: str
    default: Any

    def validate(self, value: Any) -> Any:
        """Return the accepted value or raise ProtocolError."""
        kind = self.kind
        if isinstance(kind, Slider):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ProtocolError("bad_type", f"{self.id} expects a number")
            v = float(value)
            if not math.isfinite(v):
                raise ProtocolError("bad_type", f"{self.id} must be finite")
            if not kind.min <= v <= kind.max:
                raise ProtocolError(
                    "out_of_bounds", f"{self.id}={v:g} outside [{kind.min:g}, {kind.max:g}]"
                )
            ratio = (v - kind.min) / kind.step
            # max stays reachable even when the step does not divide the range
            if abs(ratio - round(ratio)) > STEP_TOL and v != kind.max:
                raise ProtocolError("off_step", f"{self.id}={v:g} not on step {kind.step:g}")
            return v
        if isinstance(kind, Toggle):
            if not isinstance(value, bool):
                raise ProtocolError("bad_type", f"{self.id} expects true or false")
            return value
        if isinstance(value, bool) or not isinstance(value, (int, float)) or value != int(value):
            raise ProtocolError("bad_type", f"{self.id} expects an integer index")
        index = int(value)
        if not 0 <= index < kind.count:
            raise ProtocolError(
                "out_of_bounds", f"{self.id}={index} outside valid range 0..{kind.count - 1}"
            )
        return index

    def describe(self, value: Any) -> dict:
        """Self-describing wire form: the client builds its widget from this."""
        kind = self.kind
        if isinstance(kind, Slider):
            return {
                "kind": "slider",
                "label": self.label,
                "min": kind.min,
                "max": kind.max,
                "step": kind.step,
                "value": value,
            }
        if isinstance(kind, Toggle):
            return {"kind": "toggle", "label": self.label, "value": value}
        return {"kind": "index", "label": self.label, "count": kind.count, "value": value}


def _translation_defs() -> dict[str, ParamDef]:
    return {
        p: ParamDef(p, Slider(-10.0, 10.0, 0.1), f"Translation {p[1]}", 0.0)
        for p in ("tx", "ty", "tz")
    }


def _rotation_defs(scene: Scene) -> dict[str, ParamDef]:
    count = len(scene.rotatable_index)
    if count == 0:
        raise ValueError("rotation session needs at least one rotatable part")
    defs = {
        "part": ParamDef("part", IndexSelector(count), "Part", 0),
        "angle": ParamDef("angle", Slider(-180.0, 180.0, 1.0), "Rotation angle (°)", 0.0),
        "axis": ParamDef("axis", IndexSelector(3), "Rotation axis", 0),
        "clockwise": ParamDef("clockwise", Toggle(), "Clockwise", False),
    }
    for axis in "xyz":
        defs[f"pivot_snap_{axis}"] = ParamDef(
            f"pivot_snap_{axis}", IndexSelector(4), f"Pivot snap {axis}", 0
        )
        defs[f"pivot_offset_{axis}"] = ParamDef(
            f"pivot_offset_{axis}", Slider(-10.0, 10.0, 0.1), f"Pivot offset {axis}", 0.0
        )
    return defs


@dataclass(frozen=True)
class SessionState:
    """Immutable session snapshot-in-memory; handlers return new instances."""

    session_id: str
    scene: Scene
    mode: Mode
    param_defs: dict[str, ParamDef]
    params: dict[str, Any]
    selection: Selection | None
    last_preview: PreviewResult | None
    seq: int


def create_session(scene: Scene, mode: Mode, session_id: str | None = None) -> SessionState:
    """Fresh session at seq 0 with mode defaults; no preview yet."""
    defs = _rotation_defs(scene) if mode is Mode.ROTATION else _translation_defs()
    params = {pid: d.default for pid, d in defs.items()}
    state = SessionState(
        session_id=session_id if session_id is not None else uuid.uuid4().hex,
        scene=scene,
        mode=mode,
        param_defs=defs,
        params=params,
        selection=None,
        last_preview=None,
        seq=0,
    )
    return replace(state, selection=_derive_selection(state))


def _derive_selection(state: SessionState) -> Selection | None:
    if state.mode is not Mode.ROTATION:
        return None
    return select_part(state.scene, state.params["part"])


def _translation_target(scene: Scene) -> str | None:
    ids = scene.translatable_ids
    return ids[0] if ids else None


def build_request(state: SessionState) -> RotationRequest | TranslationRequest | None:
    """The feasibility request described by the current parameter values."""
    if state.mode is Mode.TRANSLATION:
        target = _translation_target(state.scene)
        if target is None:
            return None
        return TranslationRequest(
            target, Vec3(state.params["tx"], state.params["ty"], state.params["tz"])
        )
    part_id = state.scene.rotatable_index[state.params["part"]]
    part = state.scene.part(part_id)
    controls = PivotControls(
        snap_x=SNAP_ORDER[state.params["pivot_snap_x"]],
        snap_y=SNAP_ORDER[state.params["pivot_snap_y"]],
        snap_z=SNAP_ORDER[state.params["pivot_snap_z"]],
        offset_x=state.params["pivot_offset_x"],
        offset_y=state.params["pivot_offset_y"],
        offset_z=state.params["pivot_offset_z"],
    )
    pivot = resolve_pivot(part, controls).world
    sense = RotationSense.CW if state.params["clockwise"] else RotationSense.CCW
    spec = RotationSpec(
        AXIS_ORDER[state.params["axis"]], sense, AngleDeg(state.params["angle"]), pivot
    )
    return RotationRequest(part_id, spec)


def compute_preview(state: SessionState, pivot_tolerance: float) -> PreviewResult | None:
    request = build_request(state)
    if request is None:
        return None
    return apply_request(state.scene, request, pivot_tolerance)


def state_update_payload(state: SessionState) -> dict:
    return {
        "params": {pid: d.describe(state.params[pid]) for pid, d in state.param_defs.items()},
        "selection": selection_to_dict(state.selection),
        "seq": state.seq,
    }


def _server_msg(state: SessionState, mtype: str, payload: dict, broadcast: bool) -> Outbound:
    return Outbound(Message(mtype, state.session_id, state.seq, payload), broadcast)


def _error(state: SessionState, code: str, detail: str) -> tuple[SessionState, list[Outbound]]:
    return state, [_server_msg(state, "error", {"code": code, "detail": detail}, False)]


def _broadcast_change(
    state: SessionState, pivot_tolerance: float, include_verdict: bool
) -> tuple[SessionState, list[Outbound]]:
    preview = compute_preview(state, pivot_tolerance)
    state = replace(state, last_preview=preview)
    out = [_server_msg(state, "state_update", state_update_payload(state), True)]
    if preview is not None:
        out.append(
            _server_msg(
                state, "preview", preview_payload(preview, state.seq, include_verdict), True
            )
        )
    return state, out


def handle_message(
    state: SessionState,
    msg: Message,
    pivot_tolerance: float = 0.05,
    include_verdict: bool = True,
) -> tuple[SessionState, list[Outbound]]:
    """Apply one client message; errors leave the state untouched."""
    if msg.session and msg.session != state.session_id:
        return _error(state, "unknown_session", f"no session {msg.session!r}")

    if msg.type == "hello":
        name = msg.payload.get("client_name")
        if not isinstance(name, str) or not name:
            return _error(state, "bad_payload", "hello needs a client_name")
        return state, [
            _server_msg(state, "scene", scene_payload(state.scene), False),
            _server_msg(state, "state_update", state_update_payload(state), False),
        ]

    if msg.type == "snapshot_request":
        snap = snapshot_dict(state)
        return state, [_server_msg(state, "snapshot", snap, False)]

    if msg.type == "set_param":
        pid = msg.payload.get("id")
        if not isinstance(pid, str) or pid not in state.param_defs:
            return _error(state, "unknown_param", f"unknown param id {pid!r}")
        if "value" not in msg.payload:
            return _error(state, "bad_payload", "set_param needs a value")
        try:
            value = state.param_defs[pid].validate(msg.payload["value"])
        except ProtocolError as exc:
            return _error(state, exc.code, exc.detail)
        state = replace(state, params={**state.params, pid: value}, seq=state.seq + 1)
        state = replace(state, selection=_derive_selection(state))
        return _broadcast_change(state, pivot_tolerance, include_verdict)

    if msg.type == "select_part":
        if state.mode is not Mode.ROTATION:
            return _error(state, "bad_mode", "select_part requires a rotation session")
        index = msg.payload.get("index")
        if isinstance(index, bool) or not isinstance(index, int):
            return _error(state, "bad_payload", "select_part needs an integer index")
        try:
            selection = select_part(state.scene, index)
        except SelectionRangeError as exc:
            lo, hi = exc.valid_range
            return _error(state, "out_of_range", f"index {index} outside valid range {lo}..{hi}")
        state = replace(
            state,
            params={**state.params, "part": index},
            selection=selection,
            seq=state.seq + 1,
        )
        return _broadcast_change(state, pivot_tolerance, include_verdict)

    if msg.type == "set_mode":
        mode_name = msg.payload.get("mode")
        try:
            mode = Mode(mode_name)
        except ValueError:
            return _error(state, "bad_payload", f"unknown mode {mode_name!r}")
        try:
            fresh = create_session(state.scene, mode, state.session_id)
        except ValueError as exc:
            return _error(state, "bad_mode", str(exc))
        state = replace(fresh, seq=state.seq + 1)
        return _broadcast_change(state, pivot_tolerance, include_verdict)

    if msg.type == "reset":
        defaults = {pid: d.default for pid, d in state.param_defs.items()}
        state = replace(state, params=defaults, seq=state.seq + 1)
        state = replace(state, selection=_derive_selection(state))
        return _broadcast_change(state, pivot_tolerance, include_verdict)

    return _error(state, "unknown_type", f"unknown message type {msg.type!r}")


# --- snapshots ---------------------------------------------------------------


def snapshot_dict(state: SessionState) -> dict:
    verdict = None
    if state.last_preview is not None:
        verdict = verdict_to_dict(state.last_preview.verdict)
    return {
        "mode": state.mode.value,
        "params": dict(state.params),
        "selection": selection_to_dict(state.selection),
        "seq": state.seq,
        "session": state.session_id,
        "verdict": verdict,
    }


def snapshot(state: SessionState) -> str:
    """Canonical state document: params, selection, verdict, seq."""
    return canonical_document(snapshot_dict(state))


def restore_session(
    scene: Scene, doc: str | bytes, pivot_tolerance: float = 0.05
) -> SessionState:
    """Rebuild a session from a snapshot; derived fields are recomputed."""
    try:
        raw = json.loads(doc)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed snapshot: {exc}") from exc
    mode = Mode(raw["mode"])
    state = create_session(scene, mode, raw["session"])
    params = dict(state.params)
    for pid, value in raw["params"].items():
        if pid not in state.param_defs:
            raise ValueError(f"snapshot param {pid!r} not defined for mode {mode.value}")
        params[pid] = state.param_defs[pid].validate(value)
    state = replace(state, params=params, seq=int(raw["seq"]))
    state = replace(state, selection=_derive_selection(state))
    if raw.get("verdict") is not None:
        state = replace(state, last_preview=compute_preview(state, pivot_tolerance))
    return state
