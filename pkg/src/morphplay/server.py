"""WebSocket sync server: one scene, one session, any number of clients.

Text frames, one canonical JSON message per frame, bit-identical to the stdio
replay payloads. The asyncio event loop serializes message handling, giving
every client the same total order of state changes; snapshots are flushed to
disk on shutdown so an interrupted session can be restored.
"""

from __future__ import annotations

import asyncio
import signal
from pathlib import Path

from websockets.asyncio.server import ServerConnection, broadcast, serve

from .errors import ProtocolError
from .protocol import ClientSeqGuard, Message, parse_client_message, to_wire
from .scene import Scene
from .session import Mode, create_session, handle_message, snapshot


class SyncServer:
    """Session host shared by every connection of one served scene."""

    def __init__(
        self,
        scene: Scene,
        mode: Mode = Mode.ROTATION,
        session_id: str | None = None,
        pivot_tolerance: float = 0.05,
        include_verdict: bool = True,
        snapshot_dir: str | Path = "snapshots",
    ):
        self.state = create_session(scene, mode, session_id)
        self.pivot_tolerance = pivot_tolerance
        self.include_verdict = include_verdict
        self.snapshot_dir = Path(snapshot_dir)
        self._clients: set[ServerConnection] = set()

    def process(self, text: str | bytes, guard: ClientSeqGuard) -> tuple[list[str], list[str]]:
        """Handle one frame; returns (sender-only frames, broadcast frames)."""
        try:
            msg = parse_client_message(text, default_session=self.state.session_id)
            guard.check(msg.seq)
        except ProtocolError as exc:
            err = Message(
                "error", self.state.session_id, self.state.seq,
                {"code": exc.code, "detail": exc.detail},
            )
            return [to_wire(err)], []
        self.state, outbound = handle_message(
            self.state, msg,
            pivot_tolerance=self.pivot_tolerance,
            include_verdict=self.include_verdict,
        )
        to_sender = [to_wire(o.message) for o in outbound if not o.broadcast]
        to_all = [to_wire(o.message) for o in outbound if o.broadcast]
        return to_sender, to_all

    async def handler(self, connection: ServerConnection) -> None:
        self._clients.add(connection)
        guard = ClientSeqGuard()
        try:
            async for frame in connection:
                to_sender, to_all = self.process(frame, guard)
                for line in to_sender:
                    await connection.send(line)
                for line in to_all:
                    broadcast(self._clients, line)
        finally:
            self._clients.discard(connection)

    def flush_snapshot(self) -> Path:
        self.snapshot_dir.mkdir(parents=True, exist_ok=True)
        path = self.snapshot_dir / f"{self.state.session_id}.json"
        path.write_text(snapshot(self.state), encoding="utf-8")
        return path

    async def run(self, host: str = "127.0.0.1", port: int = 8765) -> None:
        """Serve until interrupted; flushes the final snapshot on the way out."""
        stop = asyncio.Event()
        loop = asyncio.get_running_loop()
        for sig in (signal.SIGINT, signal.SIGTERM):
            try:
                loop.add_signal_handler(sig, stop.set)
            except NotImplementedError:
                pass
        async with serve(self.handler, host, port) as server:
            bound = server.sockets[0].getsockname()[1] if server.sockets else port
            print(f"listening on ws://{host}:{bound}", flush=True)
            await stop.wait()
        path = self.flush_snapshot()
        print(f"snapshot written to {path}", flush=True)
