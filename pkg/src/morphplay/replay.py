"""Deterministic stdio replay: scripts in, canonical transcript lines out.

A script is newline-delimited JSON client-message payloads. The harness plays
the role of a single connected client: it opens with a synthetic hello,
feeds each script message through the session state machine, and closes with a
snapshot_request, so an equivalent socket session produces byte-identical
payloads (the transport-equivalence contract).
"""

from __future__ import annotations

import json

from .errors import ProtocolError
from .protocol import ClientSeqGuard, Message, to_wire, parse_client_message
from .scene import Scene
from .session import Mode, create_session, handle_message

REPLAY_CLIENT = "replay"


class ReplayScriptError(ValueError):
    """The script file itself is unusable (not valid JSON per line)."""


def parse_script(text: str) -> list[str]:
    """Split and syntax-check script lines; raises ReplayScriptError."""
    lines = [line for line in text.splitlines() if line.strip()]
    for i, line in enumerate(lines):
        try:
            parsed = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ReplayScriptError(f"script line {i + 1}: {exc}") from exc
        if not isinstance(parsed, dict):
            raise ReplayScriptError(f"script line {i + 1}: expected a JSON object")
    return lines


def run_replay(
    scene: Scene,
    script_text: str,
    mode: Mode = Mode.ROTATION,
    session_id: str = REPLAY_CLIENT,
    pivot_tolerance: float = 0.05,
    include_verdict: bool = True,
) -> list[str]:
    """Replay a script against a fresh session; returns canonical wire lines."""
    lines = parse_script(script_text)
    state = create_session(scene, mode, session_id)
    guard = ClientSeqGuard()
    transcript: list[str] = []

    def feed(raw_text: str) -> None:
        nonlocal state
        try:
            msg = parse_client_message(raw_text, default_session=state.session_id)
            guard.check(msg.seq)
        except ProtocolError as exc:
            err = Message("error", state.session_id, state.seq, {"code": exc.code, "detail": exc.detail})
            transcript.append(to_wire(err))
            return
        state, outbound = handle_message(
            state, msg, pivot_tolerance=pivot_tolerance, include_verdict=include_verdict
        )
        transcript.extend(to_wire(o.message) for o in outbound)

    feed(json.dumps({"type": "hello", "payload": {"client_name": REPLAY_CLIENT}}))
    for line in lines:
        feed(line)
    feed(json.dumps({"type": "snapshot_request", "payload": {}}))
    return transcript


def transcript_text(lines: list[str]) -> str:
    return "".join(line + "\n" for line in lines)
