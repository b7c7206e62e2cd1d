import contextlib
import importlib.resources
import json
import random
import signal
import subprocess
import sys

import pytest

from morphplay.protocol import Message
from morphplay.scene import load_scene
from morphplay.session import Slider, Toggle

RECV_TIMEOUT = 10.0


def bundled_text(name: str) -> str:
    return importlib.resources.files("morphplay.data").joinpath(name).read_text("utf-8")


@pytest.fixture(scope="session")
def house_doc() -> str:
    return bundled_text("house.json")


@pytest.fixture()
def house(house_doc):
    return load_scene(house_doc)


@contextlib.contextmanager
def serve_house(snapshot_dir, *extra_args):
    """Run the CLI server on an ephemeral port; SIGINT it on exit."""
    proc = subprocess.Popen(
        [
            sys.executable, "-m", "morphplay.cli", "serve", "house.json",
            "--port", "0", "--session-id", "replay", "--snapshot-dir", str(snapshot_dir),
            *extra_args,
        ],
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
        text=True,
    )
    try:
        line = proc.stdout.readline()
        assert "listening on ws://" in line, (line, proc.stderr.read())
        port = int(line.strip().rsplit(":", 1)[1])
        yield proc, port
    finally:
        if proc.poll() is None:
            proc.send_signal(signal.SIGINT)
            try:
                proc.wait(timeout=10)
            except subprocess.TimeoutExpired:
                proc.kill()
                proc.wait()


def drive_session(port, script_lines):
    """Send hello + script + snapshot_request; collect frames through the snapshot."""
    from websockets.sync.client import connect

    frames = []
    with connect(f"ws://127.0.0.1:{port}") as ws:
        ws.send(json.dumps({"type": "hello", "payload": {"client_name": "replay"}}))
        for line in script_lines:
            ws.send(line)
        ws.send(json.dumps({"type": "snapshot_request", "payload": {}}))
        while True:
            frame = ws.recv(timeout=RECV_TIMEOUT)
            frames.append(frame)
            if json.loads(frame)["type"] == "snapshot":
                return frames


def random_session_message(rng: random.Random, session: str = "sess") -> Message:
    """Mixed valid/invalid client messages for state-machine fuzzing."""
    def msg(mtype, **payload):
        return Message(mtype, session, None, payload)

    roll = rng.random()
    if roll < 0.55:
        pid = rng.choice(
            ["angle", "axis", "clockwise", "part", "pivot_snap_x", "pivot_offset_y", "tx", "bogus"]
        )
        value = rng.choice(
            [0, 45, -180, 181, 999, 0.5, -0.1, 2, 3, 7, 8, True, False, "x", None, 1.5, -10.0, 10.1]
        )
        return msg("set_param", id=pid, value=value)
    if roll < 0.7:
        return msg("select_part", index=rng.choice([-1, 0, 3, 7, 8, 100, "x"]))
    if roll < 0.8:
        return msg("set_mode", mode=rng.choice(["rotation", "translation", "scale"]))
    if roll < 0.85:
        return msg("reset")
    if roll < 0.9:
        return msg("hello", client_name="fuzz")
    if roll < 0.95:
        return msg("snapshot_request")
    return Message(rng.choice(["preview", "warp", ""]), session, None, {})


def params_in_bounds(state) -> bool:
    for pid, d in state.param_defs.items():
        v = state.params[pid]
        kind = d.kind
        if isinstance(kind, Slider):
            if not (kind.min <= v <= kind.max):
                return False
        elif isinstance(kind, Toggle):
            if not isinstance(v, bool):
                return False
        elif not (isinstance(v, int) and 0 <= v < kind.count):
            return False
    return True
