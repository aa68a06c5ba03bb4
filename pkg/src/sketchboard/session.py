"""Headless scripted sessions: parse an event script, replay it tick by
tick, and hash every frame for golden comparisons.

Script files are newline-delimited JSON, one event per line, sorted by tick.
Frame files are newline-delimited JSON records {tick, digest, drawlist}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .drawlist import (
    DrawList,
    FNV_OFFSET_BASIS,
    canonical_serialization,
    drawlist_digest,
    drawlist_to_jsonable,
    fnv1a,
)
from .engine import Confirm, Engine, EngineEvent, PointerEvent, ResumeBreakpoint, SpawnNumeric
from .errors import MalformedScript
from .recognizer import GlyphLibrary


@dataclass(frozen=True)
class ScriptEvent:
    tick: int
    payload: EngineEvent


@dataclass(frozen=True)
class FrameSnapshot:
    tick: int
    drawlist: DrawList
    digest: int

    def digest_hex(self) -> str:
        return f"{self.digest:016x}"


def _require(cond, message, line):
    if not cond:
        raise MalformedScript(message, line)


def _number(obj, key, line):
    v = obj.get(key)
    _require(isinstance(v, (int, float)) and not isinstance(v, bool), f"{key} must be a number", line)
    return float(v)


def parse_script(text: str) -> list[ScriptEvent]:
    """Parse and validate a newline-delimited JSON event script."""
    events: list[ScriptEvent] = []
    last_tick = 0
    pointer_down = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise MalformedScript(f"invalid JSON ({exc.msg})", line_no) from exc
        _require(isinstance(obj, dict), "event must be an object", line_no)
        tick = obj.get("tick")
        _require(isinstance(tick, int) and tick >= 0, "tick must be a non-negative integer", line_no)
        _require(tick >= last_tick, "events must be sorted by tick", line_no)
        last_tick = tick
        kind = obj.get("type")
        if kind == "pointer":
            phase = obj.get("phase")
            _require(phase in ("down", "move", "up"), "phase must be down|move|up", line_no)
            if phase == "down":
                _require(not pointer_down, "pointer already down", line_no)
                pointer_down = True
            else:
                _require(pointer_down, f"pointer {phase} before down", line_no)
                if phase == "up":
                    pointer_down = False
            payload: EngineEvent = PointerEvent(
                phase=phase, x=_number(obj, "x", line_no), y=_number(obj, "y", line_no)
            )
        elif kind == "spawn_numeric":
            value = obj.get("value")
            _require(isinstance(value, int) and not isinstance(value, bool), "value must be an integer", line_no)
            x = _number(obj, "x", line_no) if "x" in obj else 100.0
            y = _number(obj, "y", line_no) if "y" in obj else 100.0
            payload = SpawnNumeric(value=value, x=x, y=y)
        elif kind == "confirm":
            payload = Confirm()
        elif kind == "resume_breakpoint":
            sketch = obj.get("sketch")
            _require(isinstance(sketch, int), "sketch must be an integer id", line_no)
            payload = ResumeBreakpoint(sketch=sketch)
        else:
            raise MalformedScript(f"unknown event type {kind!r}", line_no)
        events.append(ScriptEvent(tick=tick, payload=payload))
    return events


def run_script(
    script: list[ScriptEvent],
    max_tick: int,
    library: GlyphLibrary | None = None,
) -> list[FrameSnapshot]:
    """Replay a script on a fresh engine; one frame per tick from 0..max_tick."""
    engine = Engine(library=library)
    for event in script:
        engine.schedule(event.tick, event.payload)
    frames: list[FrameSnapshot] = []
    for tick in range(max_tick + 1):
        engine.run_tick()
        drawlist = engine.render()
        frames.append(
            FrameSnapshot(tick=tick, drawlist=drawlist, digest=drawlist_digest(drawlist))
        )
    return frames


def hash_frames(digests) -> int:
    """FNV-1a fold over per-frame digests, in order.

    Accepts FrameSnapshots or plain integer digests.  The empty sequence
    folds to the FNV-1a offset basis.
    """
    h = FNV_OFFSET_BASIS
    for item in digests:
        digest = item.digest if isinstance(item, FrameSnapshot) else int(item)
        h = fnv1a(digest.to_bytes(8, "big"), h)
    return h


def frames_to_ndjson(frames: list[FrameSnapshot]) -> str:
    lines = []
    for f in frames:
        lines.append(
            json.dumps(
                {"tick": f.tick, "digest": f.digest_hex(), "drawlist": drawlist_to_jsonable(f.drawlist)},
                sort_keys=True,
                separators=(",", ":"),
            )
        )
    return "\n".join(lines) + "\n"


def digests_from_ndjson(text: str) -> list[int]:
    """Read per-frame digests back from a frames file."""
    digests = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
            digests.append(int(obj["digest"], 16))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise MalformedScript(f"invalid frame record: {exc}", line_no) from exc
    return digests


def canonical_frame(frame: FrameSnapshot) -> str:
    return canonical_serialization(frame.drawlist)
