"""Command-line entry points: recognize, run, hash, serve.

Exit code 0 on success, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

from .errors import BoardError, MalformedScript
from .geometry import DegenerateStroke, Stroke, StrokeSet
from .recognizer import GlyphLibrary, default_library, load_library, recognize
from .session import digests_from_ndjson, frames_to_ndjson, hash_frames, parse_script, run_script


def _load_library_arg(path: str | None) -> GlyphLibrary:
    if path is None:
        return default_library()
    return load_library(Path(path).read_bytes())


def _cmd_recognize(args) -> int:
    library = _load_library_arg(args.library)
    raw = json.loads(Path(args.strokes).read_text(encoding="utf-8"))
    if not isinstance(raw, list) or not raw:
        raise ValueError("strokes file must be a non-empty list of strokes")
    drawing = StrokeSet([Stroke.from_points(pts) for pts in raw])
    match = recognize(drawing, library)
    if match is None:
        print(json.dumps({"match": None}))
    else:
        print(
            json.dumps(
                {
                    "match": {
                        "name": match.template_name,
                        "sketch_type": match.sketch_type,
                        "score": match.score,
                    }
                }
            )
        )
    return 0


def _cmd_run(args) -> int:
    library = _load_library_arg(args.library)
    script = parse_script(Path(args.script).read_text(encoding="utf-8"))
    frames = run_script(script, max_tick=args.ticks, library=library)
    Path(args.out).write_text(frames_to_ndjson(frames), encoding="utf-8")
    print(f"{hash_frames(frames):016x}")
    return 0


def _cmd_hash(args) -> int:
    digests = digests_from_ndjson(Path(args.frames).read_text(encoding="utf-8"))
    print(f"{hash_frames(digests):016x}")
    return 0


def _cmd_serve(args) -> int:
    from .server import serve

    library = _load_library_arg(args.library)
    print(f"listening on ws://{args.host}:{args.port}", file=sys.stderr)
    try:
        asyncio.run(serve(args.port, library=library, host=args.host))
    except KeyboardInterrupt:
        pass
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sketchboard")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="match a strokes file against a glyph library")
    p.add_argument("--library", help="glyph library JSON (defaults to the built-in library)")
    p.add_argument("--strokes", required=True, help="JSON file: list of strokes, each a list of [x, y]")
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("run", help="replay an event script headless and write frames")
    p.add_argument("--script", required=True, help="newline-delimited JSON event script")
    p.add_argument("--ticks", type=int, required=True, help="last tick to render (inclusive)")
    p.add_argument("--out", required=True, help="output frames file (newline-delimited JSON)")
    p.add_argument("--library")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("hash", help="fold a frames file into a single digest")
    p.add_argument("--frames", required=True)
    p.set_defaults(func=_cmd_hash)

    p = sub.add_parser("serve", help="serve the wire protocol for browser clients")
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--library")
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (
        BoardError,
        MalformedScript,
        DegenerateStroke,
        json.JSONDecodeError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
