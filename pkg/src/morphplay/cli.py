"""Command line entry points: validate, replay, oracle, serve.

Exit codes: 0 success, 1 domain error (validation failure, golden mismatch,
bad flags), 2 environment/IO error. Scene paths resolve first as given, then
inside $MORPHPLAY_SCENE_DIR, then among the bundled fixtures.
"""

from __future__ import annotations

import argparse
import asyncio
import importlib.resources
import os
import sys
from pathlib import Path

from . import oracle
from .errors import SceneFormatError
from .replay import ReplayScriptError, run_replay, transcript_text
from .scene import Scene, load_scene
from .server import SyncServer
from .session import Mode

SCENE_DIR_ENV = "MORPHPLAY_SCENE_DIR"


def resolve_scene_path(arg: str) -> Path:
    candidate = Path(arg)
    if candidate.exists():
        return candidate
    if os.sep not in arg:
        env_dir = os.environ.get(SCENE_DIR_ENV)
        if env_dir and (Path(env_dir) / arg).exists():
            return Path(env_dir) / arg
        bundled = importlib.resources.files("morphplay.data") / arg
        if bundled.is_file():
            return Path(str(bundled))
    raise FileNotFoundError(f"scene not found: {arg}")


def _load_scene_file(arg: str) -> Scene:
    path = resolve_scene_path(arg)
    return load_scene(path.read_bytes())


def cmd_validate(args) -> int:
    try:
        scene = _load_scene_file(args.scene)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot read scene: {exc}", file=sys.stderr)
        return 2
    except SceneFormatError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    print(
        f"parts: {len(scene.parts)}, rotatable: {len(scene.rotatable_index)}, "
        f"translatable: {len(scene.translatable_ids)}"
    )
    return 0


def cmd_replay(args) -> int:
    try:
        scene = _load_scene_file(args.scene)
        script_path = resolve_scene_path(args.script)
        script = script_path.read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SceneFormatError as exc:
        print(f"invalid scene: {exc}", file=sys.stderr)
        return 1
    try:
        lines = run_replay(
            scene,
            script,
            mode=Mode(args.mode),
            pivot_tolerance=args.pivot_tolerance,
            include_verdict=not args.silent_verdicts,
        )
    except ReplayScriptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = transcript_text(lines)
    sys.stdout.write(text)
    if args.golden:
        try:
            golden = Path(args.golden).read_text(encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot read golden: {exc}", file=sys.stderr)
            return 2
        if text != golden:
            print("golden mismatch", file=sys.stderr)
            return 1
    return 0


def _parse_triple(text: str, flag: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"{flag} expects three comma-separated numbers")
    return (float(parts[0]), float(parts[1]), float(parts[2]))


def cmd_oracle(args) -> int:
    rotation_flags = args.axis is not None or args.sense is not None or args.angle is not None or args.pivot is not None
    if args.translate is not None and rotation_flags:
        print("error: --translate conflicts with rotation flags", file=sys.stderr)
        return 1
    point = (args.x, args.y, args.z)
    try:
        if args.translate is not None:
            out = oracle.translate_point(point, _parse_triple(args.translate, "--translate"))
        else:
            pivot = _parse_triple(args.pivot, "--pivot") if args.pivot else (0.0, 0.0, 0.0)
            out = oracle.rotate_point(
                point,
                args.axis or "z",
                args.sense or "ccw",
                args.angle if args.angle is not None else 0.0,
                pivot,
            )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(" ".join(f"{v + 0.0:.9f}" for v in out))
    return 0


def cmd_serve(args) -> int:
    try:
        scene = _load_scene_file(args.scene)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SceneFormatError as exc:
        print(f"invalid scene: {exc}", file=sys.stderr)
        return 1
    server = SyncServer(
        scene,
        mode=Mode(args.mode),
        session_id=args.session_id,
        pivot_tolerance=args.pivot_tolerance,
        include_verdict=not args.silent_verdicts,
        snapshot_dir=args.snapshot_dir,
    )
    try:
        asyncio.run(server.run(host=args.host, port=args.port))
    except OSError as exc:
        print(f"error: cannot bind: {exc}", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="morphplay")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a scene document")
    p.add_argument("scene")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("replay", help="replay a session script to a transcript")
    p.add_argument("scene")
    p.add_argument("script")
    p.add_argument("--golden", help="compare the transcript against this file")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.ROTATION.value)
    p.add_argument("--pivot-tolerance", type=float, default=0.05)
    p.add_argument("--silent-verdicts", action="store_true",
                   help="omit verdicts from previews (physical-feedback-only mode)")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("oracle", help="transform one point via the independent oracle")
    p.add_argument("x", type=float)
    p.add_argument("y", type=float)
    p.add_argument("z", type=float)
    p.add_argument("--axis", choices=["x", "y", "z"])
    p.add_argument("--sense", choices=["cw", "ccw"])
    p.add_argument("--angle", type=float)
    p.add_argument("--pivot", help="pivot point as x,y,z")
    p.add_argument("--translate", help="translation vector as x,y,z")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("serve", help="run the WebSocket sync server")
    p.add_argument("scene")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.ROTATION.value)
    p.add_argument("--session-id", default=None)
    p.add_argument("--pivot-tolerance", type=float, default=0.05)
    p.add_argument("--silent-verdicts", action="store_true")
    p.add_argument("--snapshot-dir", default="snapshots")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
