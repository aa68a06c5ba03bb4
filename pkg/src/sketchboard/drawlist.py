"""Draw-command intermediate representation and its canonical serialization.

A DrawList is the full render output of a scene for one tick.  Its canonical
JSON form (sorted keys, coordinates rounded to 4 decimals) is the golden-test
surface: frame digests are FNV-1a 64 over that serialization, so any visual
regression shows up as a digest change while benign float noise does not.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .geometry import Point2

FNV_OFFSET_BASIS = 14695981039346656037
FNV_PRIME = 1099511628211
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Transform:
    position: Point2
    scale: float = 1.0
    rotation: float = 0.0

    def __post_init__(self):
        if not (self.scale > 0.0 and math.isfinite(self.scale)):
            raise ValueError("transform scale must be positive and finite")
        object.__setattr__(self, "position", Point2(*self.position))


@dataclass(frozen=True)
class Curve:
    points: tuple[Point2, ...]
    color: str
    width: float = 2.0


@dataclass(frozen=True)
class Line:
    p0: Point2
    p1: Point2
    color: str
    width: float = 2.0


@dataclass(frozen=True)
class Oval:
    center: Point2
    rx: float
    ry: float
    color: str
    filled: bool = False


@dataclass(frozen=True)
class Text:
    text: str
    anchor: Point2
    size: float
    color: str


@dataclass(frozen=True)
class PushTransform:
    transform: Transform


@dataclass(frozen=True)
class PopTransform:
    pass


Command = Curve | Line | Oval | Text | PushTransform | PopTransform
DrawList = list


def _num(x: float) -> float:
    v = round(float(x), 4)
    return 0.0 if v == 0.0 else v  # fold -0.0 into 0.0


def _pt(p) -> list[float]:
    return [_num(p[0]), _num(p[1])]


def command_to_jsonable(cmd: Command) -> dict:
    if isinstance(cmd, Curve):
        return {
            "op": "curve",
            "points": [_pt(p) for p in cmd.points],
            "color": cmd.color,
            "width": _num(cmd.width),
        }
    if isinstance(cmd, Line):
        return {
            "op": "line",
            "p0": _pt(cmd.p0),
            "p1": _pt(cmd.p1),
            "color": cmd.color,
            "width": _num(cmd.width),
        }
    if isinstance(cmd, Oval):
        return {
            "op": "oval",
            "center": _pt(cmd.center),
            "rx": _num(cmd.rx),
            "ry": _num(cmd.ry),
            "color": cmd.color,
            "filled": cmd.filled,
        }
    if isinstance(cmd, Text):
        return {
            "op": "text",
            "text": cmd.text,
            "anchor": _pt(cmd.anchor),
            "size": _num(cmd.size),
            "color": cmd.color,
        }
    if isinstance(cmd, PushTransform):
        t = cmd.transform
        return {
            "op": "push",
            "position": _pt(t.position),
            "scale": _num(t.scale),
            "rotation": _num(t.rotation),
        }
    if isinstance(cmd, PopTransform):
        return {"op": "pop"}
    raise TypeError(f"not a draw command: {cmd!r}")


def drawlist_to_jsonable(drawlist: DrawList) -> list[dict]:
    return [command_to_jsonable(c) for c in drawlist]


def canonical_serialization(drawlist: DrawList) -> str:
    return json.dumps(
        drawlist_to_jsonable(drawlist),
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
        allow_nan=False,
    )


def fnv1a(data: bytes, h: int = FNV_OFFSET_BASIS) -> int:
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & _MASK64
    return h


def drawlist_digest(drawlist: DrawList) -> int:
    return fnv1a(canonical_serialization(drawlist).encode("utf-8"))


def _command_numbers(cmd: Command):
    if isinstance(cmd, Curve):
        for p in cmd.points:
            yield from p
        yield cmd.width
    elif isinstance(cmd, Line):
        yield from (*cmd.p0, *cmd.p1, cmd.width)
    elif isinstance(cmd, Oval):
        yield from (*cmd.center, cmd.rx, cmd.ry)
    elif isinstance(cmd, Text):
        yield from (*cmd.anchor, cmd.size)
    elif isinstance(cmd, PushTransform):
        t = cmd.transform
        yield from (*t.position, t.scale, t.rotation)


def validate_drawlist(drawlist: DrawList) -> None:
    """Check balance of push/pop pairs and finiteness of all numerics."""
    depth = 0
    for cmd in drawlist:
        if isinstance(cmd, PushTransform):
            depth += 1
        elif isinstance(cmd, PopTransform):
            depth -= 1
            if depth < 0:
                raise ValueError("unbalanced PopTransform")
        for v in _command_numbers(cmd):
            if not math.isfinite(v):
                raise ValueError(f"non-finite value in draw command {cmd!r}")
    if depth != 0:
        raise ValueError("unbalanced PushTransform")
