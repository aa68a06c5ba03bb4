"""Scene runtime: sketch instances, gestures, links, and per-tick dataflow.

The board is 1000x1000 logical units, origin top-left, y down, 60 ticks per
simulated second.  A Scene is single-owner: all mutation happens on the
engine thread in tick order; emitted draw lists and values are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, ClassVar, NamedTuple

from . import registry
from .animator import OpQueue
from .drawlist import (
    Curve,
    DrawList,
    PopTransform,
    PushTransform,
    Transform,
)
from .errors import (
    BoardError,
    DuplicateLink,
    SelfLink,
    UnknownSketch,
    UnknownSketchType,
)
from .geometry import Point2, Stroke, StrokeSet

if TYPE_CHECKING:  # pragma: no cover
    from .recognizer import Match

BOARD_SIZE = 1000.0
TICKS_PER_SECOND = 60

CLICK_MAX_TRAVEL = 0.01 * BOARD_SIZE
CLICK_MAX_TICKS = 18
SWIPE_MIN_TRAVEL = 0.05 * BOARD_SIZE
SWIPE_MAX_TICKS = 15
PERIPHERY_INNER = 0.8
PERIPHERY_OUTER = 1.2
HOLD_TICKS = 12
HOLD_SLACK = 5.0

FLASH_TICKS = 30

INK = "#e6edf3"
ACCENT = "#1f6feb"
VISITED = "#58a6ff"
SELECTED = "#f0883e"
ERROR = "#f85149"
PENDING = "#8b949e"

MAX_VALUE_DEPTH = 8


@dataclass(frozen=True)
class Record:
    """Structured value a sketch emits over links (e.g. an operation record)."""

    kind: str
    fields: dict
    seq: int

    def __post_init__(self):
        if self.seq < 0:
            raise ValueError("record seq must be non-negative")
        if _value_depth(self) > MAX_VALUE_DEPTH:
            raise ValueError("record nesting exceeds depth limit")


# A Value is None | int | float | str | Record.
Value = object


def _value_depth(v: Value) -> int:
    if isinstance(v, Record):
        inner = max((_value_depth(x) for x in v.fields.values()), default=0)
        return 1 + inner
    return 0


def is_value(v: Value) -> bool:
    if v is None or isinstance(v, (str, Record)):
        return True
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def value_to_text(v: Value) -> str:
    if v is None:
        return ""
    if isinstance(v, Record):
        val = v.fields.get("value")
        return f"{v.kind}({value_to_text(val)})"
    if isinstance(v, float):
        return f"{v:.3g}"
    return str(v)


class Bounds(NamedTuple):
    x0: float
    y0: float
    x1: float
    y1: float

    def contains(self, p: Point2) -> bool:
        return self.x0 <= p.x <= self.x1 and self.y0 <= p.y <= self.y1

    def center(self) -> Point2:
        return Point2((self.x0 + self.x1) / 2, (self.y0 + self.y1) / 2)

    def radius(self) -> float:
        return 0.5 * math.hypot(self.x1 - self.x0, self.y1 - self.y0)


class Sketch:
    """Base class for all sketch types; subclasses own their state block."""

    type_name: ClassVar[str] = ""
    LOCAL_HALF: ClassVar[float] = 50.0  # design box is [-50, 50]^2

    def __init__(self, sketch_id: int, transform: Transform):
        self.id = sketch_id
        self.transform = transform
        self.flash_until = -1

    @classmethod
    def create(cls, sketch_id: int, transform: Transform, match: "Match | None" = None):
        return cls(sketch_id, transform)

    # -- per-tick hooks -------------------------------------------------
    def step(self, scene: "Scene") -> None:
        pass

    def output(self) -> Value:
        return None

    def ingest(self, value: Value, scene: "Scene") -> None:
        pass

    def draw(self, scene: "Scene") -> list:
        return []

    # -- interaction hooks ----------------------------------------------
    def accepts_drops(self) -> bool:
        return False

    def on_drop(self, value: int, scene: "Scene") -> None:
        raise UnknownSketchType(f"{self.type_name} does not accept drops")

    def on_overlay(self, stroke: Stroke, scene: "Scene") -> None:
        pass

    def on_drag(self, path: Stroke, scene: "Scene", live: bool) -> None:
        pass

    def on_swipe(self, direction: "SwipeDirection", scene: "Scene") -> bool:
        """Handle a swipe over this sketch; True if consumed."""
        return False

    # -- geometry --------------------------------------------------------
    def bounds(self) -> Bounds:
        t = self.transform
        h = self.LOCAL_HALF * t.scale
        c, s = abs(math.cos(t.rotation)), abs(math.sin(t.rotation))
        ext = h * (c + s)  # envelope of the rotated design box
        return Bounds(t.position.x - ext, t.position.y - ext, t.position.x + ext, t.position.y + ext)

    def radius(self) -> float:
        return self.bounds().radius()

    def to_local(self, p: Point2) -> Point2:
        t = self.transform
        dx, dy = p.x - t.position.x, p.y - t.position.y
        c, s = math.cos(-t.rotation), math.sin(-t.rotation)
        return Point2((dx * c - dy * s) / t.scale, (dx * s + dy * c) / t.scale)

    def flash(self, scene: "Scene") -> None:
        self.flash_until = scene.tick + FLASH_TICKS

    def is_flashing(self, scene: "Scene") -> bool:
        return scene.tick < self.flash_until


@dataclass(frozen=True)
class Link:
    id: int
    source: int
    target: int
    created_tick: int


class SwipeDirection:
    LEFT = "left"
    RIGHT = "right"
    UP = "up"
    DOWN = "down"


@dataclass(frozen=True)
class Click:
    point: Point2


@dataclass(frozen=True)
class Swipe:
    direction: str
    start: Point2


@dataclass(frozen=True)
class Drag:
    path: Stroke
    live: bool = False


@dataclass(frozen=True)
class CommandDrag:
    start: Point2
    path: Stroke


@dataclass(frozen=True)
class GlyphDrawn:
    strokes: StrokeSet


GestureEvent = Click | Swipe | Drag | CommandDrag | GlyphDrawn


class Scene:
    def __init__(self):
        self.sketches: dict[int, Sketch] = {}
        self.links: list[Link] = []
        self.pending_strokes: list[Stroke] = []
        self.tick = 0
        self.op_queue = OpQueue()
        self.overlay_threshold = 0.35  # engines override from the library
        self._next_sketch_id = 1
        self._next_link_id = 1

    # -- sketch management ----------------------------------------------
    def new_sketch_id(self) -> int:
        sid = self._next_sketch_id
        self._next_sketch_id += 1
        return sid

    def add_sketch(self, sketch: Sketch) -> int:
        if sketch.id in self.sketches:
            raise ValueError(f"sketch id {sketch.id} already present")
        self.sketches[sketch.id] = sketch
        return sketch.id

    def remove_sketch(self, sketch_id: int) -> None:
        if sketch_id not in self.sketches:
            raise UnknownSketch(f"sketch {sketch_id} not in scene")
        del self.sketches[sketch_id]
        self.links = [l for l in self.links if l.source != sketch_id and l.target != sketch_id]

    def sketch_at(self, p: Point2) -> Sketch | None:
        """Topmost sketch whose bounds contain p (highest id draws last)."""
        for sid in sorted(self.sketches, reverse=True):
            if self.sketches[sid].bounds().contains(p):
                return self.sketches[sid]
        return None

    def periphery_at(self, p: Point2) -> Sketch | None:
        """Topmost sketch whose periphery band contains p."""
        for sid in sorted(self.sketches, reverse=True):
            sk = self.sketches[sid]
            r = sk.radius()
            if r <= 0:
                continue
            d = math.hypot(p.x - sk.transform.position.x, p.y - sk.transform.position.y)
            if PERIPHERY_INNER * r <= d <= PERIPHERY_OUTER * r:
                return sk
        return None

    # -- links ------------------------------------------------------------
    def create_link(self, source: int, target: int) -> int:
        if source == target:
            raise SelfLink("a sketch cannot link to itself")
        if source not in self.sketches or target not in self.sketches:
            raise UnknownSketch(f"link endpoints {source}->{target} must exist")
        if any(l.source == source and l.target == target for l in self.links):
            raise DuplicateLink(f"link {source}->{target} already exists")
        link = Link(id=self._next_link_id, source=source, target=target, created_tick=self.tick)
        self._next_link_id += 1
        self.links.append(link)
        return link.id


def classify_gesture(trace: Stroke, scene: Scene) -> GestureEvent:
    """Total classification of a pointer trace, checked in priority order."""
    start, end = trace.points[0], trace.points[-1]
    travel = math.hypot(end.x - start.x, end.y - start.y)
    duration = trace.duration()
    if travel < CLICK_MAX_TRAVEL and duration < CLICK_MAX_TICKS:
        return Click(point=start)
    if travel >= SWIPE_MIN_TRAVEL and duration <= SWIPE_MAX_TICKS:
        dx, dy = end.x - start.x, end.y - start.y
        if abs(dx) >= abs(dy):
            direction = SwipeDirection.LEFT if dx < 0 else SwipeDirection.RIGHT
        else:
            direction = SwipeDirection.UP if dy < 0 else SwipeDirection.DOWN
        return Swipe(direction=direction, start=start)
    if scene.periphery_at(start) is not None:
        return CommandDrag(start=start, path=trace)
    if scene.sketch_at(start) is not None:
        return Drag(path=trace)
    return GlyphDrawn(strokes=StrokeSet([*scene.pending_strokes, trace]))


def instantiate(match: "Match", at: Point2, scene: Scene) -> int | None:
    """Turn the pending drawing into a sketch after a confirming click.

    Returns the new sketch id, or None when the click misses the drawn
    glyph's bounds (strokes stay pending).
    """
    if not scene.pending_strokes:
        return None
    drawing = StrokeSet(scene.pending_strokes)
    x0, y0, x1, y1 = drawing.bounding_box()
    if not (x0 <= at.x <= x1 and y0 <= at.y <= y1):
        return None
    size = max(x1 - x0, y1 - y0)
    scale = max(size / (2 * Sketch.LOCAL_HALF), 0.05)
    transform = Transform(position=drawing.center(), scale=scale)
    cls = registry.constructor(match.sketch_type)
    sketch = cls.create(scene.new_sketch_id(), transform, match)
    scene.add_sketch(sketch)
    scene.pending_strokes = []
    return sketch.id


def propagate(scene: Scene) -> None:
    """Deliver each link's source output to its target, once per tick.

    Outputs are captured before any delivery, so targets ingesting values
    cannot affect what other links see this tick; links created this tick
    start delivering on the next one.
    """
    active = [l for l in scene.links if l.created_tick < scene.tick]
    captured = [(l, scene.sketches[l.source].output()) for l in active]
    for link, value in captured:
        target = scene.sketches[link.target]
        try:
            target.ingest(value, scene)
        except BoardError:
            target.flash(scene)


def apply_command(gesture: CommandDrag, scene: Scene) -> None:
    """Scale, rotate, or translate a sketch from a periphery drag."""
    sketch = scene.periphery_at(gesture.start)
    if sketch is None:
        raise UnknownSketch("command drag does not start on any sketch periphery")
    path = gesture.path
    start, end = path.points[0], path.points[-1]
    center = sketch.transform.position

    # hold: time until the pointer first leaves a small slack circle
    hold = path.duration()
    for p, t in zip(path.points, path.tick_stamps):
        if math.hypot(p.x - start.x, p.y - start.y) > HOLD_SLACK:
            hold = t - path.tick_stamps[0]
            break
    if hold >= HOLD_TICKS:
        t = sketch.transform
        sketch.transform = Transform(
            position=Point2(t.position.x + end.x - start.x, t.position.y + end.y - start.y),
            scale=t.scale,
            rotation=t.rotation,
        )
        return

    r0 = math.hypot(start.x - center.x, start.y - center.y)
    r1 = math.hypot(end.x - center.x, end.y - center.y)
    a0 = math.atan2(start.y - center.y, start.x - center.x)
    a1 = math.atan2(end.y - center.y, end.x - center.x)
    dangle = math.remainder(a1 - a0, math.tau)
    radial = abs(r1 - r0)
    tangential = abs(dangle) * (r0 + r1) / 2.0
    t = sketch.transform
    if radial >= tangential:
        factor = max(r1 / r0, 0.05) if r0 > 0 else 1.0
        sketch.transform = Transform(position=t.position, scale=t.scale * factor, rotation=t.rotation)
    else:
        sketch.transform = Transform(position=t.position, scale=t.scale, rotation=t.rotation + dangle)


def drag_drop(numeric_id: int, onto: int, scene: Scene) -> bool:
    """Drop a numeric sketch onto a droppable target; consumed on success."""
    if numeric_id not in scene.sketches or onto not in scene.sketches:
        raise UnknownSketch("drag-drop endpoints must exist")
    numeric = scene.sketches[numeric_id]
    target = scene.sketches[onto]
    value = numeric.output()
    if not isinstance(value, int) or isinstance(value, bool):
        return False
    if not target.accepts_drops():
        return False  # snaps back
    scene.remove_sketch(numeric_id)
    target.on_drop(value, scene)
    return True


def render(scene: Scene) -> DrawList:
    """Pure draw-list emission: sketches in ascending id, then pending ink."""
    commands: DrawList = []
    for sid in sorted(scene.sketches):
        sketch = scene.sketches[sid]
        commands.append(PushTransform(sketch.transform))
        commands.extend(sketch.draw(scene))
        commands.append(PopTransform())
    for stroke in scene.pending_strokes:
        commands.append(Curve(points=tuple(stroke.points), color=PENDING, width=2.0))
    return commands
