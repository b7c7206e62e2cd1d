"""Wire protocol: message envelopes, payload shapes, canonical encoding.

One JSON object per WebSocket text frame, or per line in the stdio replay
mode; the payload bytes are identical across transports. Client messages may
carry a ``seq`` that must strictly increase per connection (guarded at the
transport edge); server messages always carry the seq of the state they
reflect. Golden transcripts rely on the canonical encoding in
:mod:`morphplay.canonical`, so no message ever includes wall-clock data.

Client -> server types: hello, set_param, select_part, set_mode, reset,
snapshot_request. Server -> client types: scene, state_update, preview,
snapshot, error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import json

from .annotations import Annotation
from .canonical import canonical_dumps
from .errors import ProtocolError
from .feasibility import PreviewResult, Verdict
from .geometry import RigidTransform, Vec3
from .scene import Scene, Selection, scene_to_dict

CLIENT_TYPES = frozenset(
    {"hello", "set_param", "select_part", "set_mode", "reset", "snapshot_request"}
)
SERVER_TYPES = frozenset({"scene", "state_update", "preview", "snapshot", "error"})


@dataclass(frozen=True, slots=True)
class Message:
    """Protocol envelope; ``seq`` is optional on client messages."""

    type: str
    session: str
    seq: int | None
    payload: dict[str, Any]


@dataclass(frozen=True, slots=True)
class Outbound:
    """A server message plus its audience: broadcast or sender-only."""

    message: Message
    broadcast: bool


def to_wire(msg: Message) -> str:
    return canonical_dumps(
        {"payload": msg.payload, "seq": msg.seq, "session": msg.session, "type": msg.type}
    )


def parse_client_message(text: str | bytes, default_session: str = "") -> Message:
    """Parse one client frame; malformed input raises ProtocolError."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProtocolError("bad_payload", f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ProtocolError("bad_payload", "message must be a JSON object")
    unknown = set(raw) - {"type", "session", "seq", "payload"}
    if unknown:
        raise ProtocolError("bad_payload", f"unknown envelope key(s) {sorted(unknown)}")
    mtype = raw.get("type")
    if not isinstance(mtype, str):
        raise ProtocolError("bad_payload", "missing message type")
    if mtype not in CLIENT_TYPES:
        raise ProtocolError("unknown_type", f"unknown message type {mtype!r}")
    seq = raw.get("seq")
    if seq is not None and (isinstance(seq, bool) or not isinstance(seq, int)):
        raise ProtocolError("bad_payload", "seq must be an integer")
    payload = raw.get("payload", {})
    if not isinstance(payload, dict):
        raise ProtocolError("bad_payload", "payload must be an object")
    session = raw.get("session", default_session)
    if not isinstance(session, str):
        raise ProtocolError("bad_payload", "session must be a string")
    return Message(type=mtype, session=session, seq=seq, payload=payload)


class ClientSeqGuard:
    """Per-connection strictly-increasing seq check for client messages."""

    def __init__(self):
        self._last: int | None = None

    def check(self, seq: int | None) -> None:
        if seq is None:
            return
        if self._last is not None and seq <= self._last:
            raise ProtocolError("stale_seq", f"seq {seq} not greater than {self._last}")
        self._last = seq


# --- payload shapes ----------------------------------------------------------


def vec_to_list(v: Vec3) -> list[float]:
    return [v.x, v.y, v.z]


def pose_to_dict(t: RigidTransform) -> dict:
    return {"rotation": list(t.rotation), "translation": vec_to_list(t.translation)}


def verdict_to_dict(v: Verdict) -> dict:
    return {
        "status": v.status.value,
        "reason": None if v.reason is None else v.reason.value,
        "detail": v.detail,
    }


def annotation_to_dict(a: Annotation) -> dict:
    return {
        "kind": a.kind.value,
        "points": [vec_to_list(p) for p in a.points],
        "anchor": vec_to_list(a.anchor),
        "text": a.text,
        "color_hint": a.color_hint.value,
    }


def scene_payload(scene: Scene) -> dict:
    return scene_to_dict(scene)


def selection_to_dict(sel: Selection | None) -> dict | None:
    if sel is None:
        return None
    return {
        "part_id": sel.part_id,
        "origin": vec_to_list(sel.origin),
        "axes": [vec_to_list(a) for a in sel.axes],
    }


def preview_payload(result: PreviewResult, seq: int, include_verdict: bool = True) -> dict:
    payload = {
        "part_id": result.part_id,
        "pose": pose_to_dict(result.preview_pose),
        "annotations": [annotation_to_dict(a) for a in result.annotations],
        "seq": seq,
    }
    if include_verdict:
        payload["verdict"] = verdict_to_dict(result.verdict)
    return payload
