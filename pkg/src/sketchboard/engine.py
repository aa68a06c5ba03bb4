"""Event-driven engine: assembles pointer traces, dispatches gestures, and
runs the deterministic tick pipeline (inputs, ops, physics, propagation).

All behavior is a function of the injected event schedule and the tick
counter, never of wall-clock time, so identical schedules replay exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .drawlist import DrawList, Transform
from .errors import NoBreakpointActive
from .geometry import Point2, Stroke, StrokeSet, normalize
from .recognizer import GlyphLibrary, Match, default_library, recognize
from .runtime import (
    Click,
    CommandDrag,
    Drag,
    GestureEvent,
    GlyphDrawn,
    Scene,
    Swipe,
    apply_command,
    classify_gesture,
    drag_drop,
    instantiate,
    propagate,
    render,
)

# delete gesture: a quick periphery click arms the sketch for this many ticks
DELETE_ARM_TICKS = 90
# single-stroke X: down-diagonal, hook to the opposite top corner, second diagonal
_X_STROKE = [(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)]
_X_THRESHOLD = 0.35


def _is_delete_stroke(trace: Stroke) -> bool:
    from .geometry import StrokeSet as _SS, glyph_distance

    try:
        drawn = normalize(_SS([trace]))
        template = normalize(_SS([Stroke.from_points([(x * 100, y * 100) for x, y in _X_STROKE])]))
    except Exception:
        return False
    if drawn.stroke_count != template.stroke_count:
        return False
    return glyph_distance(drawn, template) <= _X_THRESHOLD


@dataclass(frozen=True)
class PointerEvent:
    phase: str  # "down" | "move" | "up"
    x: float
    y: float


@dataclass(frozen=True)
class SpawnNumeric:
    value: int
    x: float = 100.0
    y: float = 100.0


@dataclass(frozen=True)
class Confirm:
    pass


@dataclass(frozen=True)
class ResumeBreakpoint:
    sketch: int


EngineEvent = PointerEvent | SpawnNumeric | Confirm | ResumeBreakpoint


class Engine:
    def __init__(self, library: GlyphLibrary | None = None):
        self.library = library if library is not None else default_library()
        self.scene = Scene()
        self.scene.overlay_threshold = self.library.overlay_threshold
        self.pending_match: Match | None = None
        self._schedule: dict[int, list[EngineEvent]] = {}
        self._trace_points: list[Point2] = []
        self._trace_ticks: list[int] = []
        self._pointer_down = False
        self._drag_sketch_id: int | None = None
        self._armed_delete: tuple[int, int] | None = None  # (sketch id, expiry tick)
        self.last_scheduled_tick = -1

    # -- event intake -----------------------------------------------------
    def schedule(self, tick: int, event: EngineEvent) -> None:
        if tick < self.scene.tick:
            tick = self.scene.tick  # late events apply at the next tick
        self._schedule.setdefault(tick, []).append(event)
        self.last_scheduled_tick = max(self.last_scheduled_tick, tick)

    # -- tick pipeline ------------------------------------------------------
    def run_tick(self) -> None:
        scene = self.scene
        t = scene.tick
        for event in self._schedule.pop(t, ()):  # inputs
            self._apply_event(event, t)
        scene.op_queue.tick(t)  # resumable ops
        for sid in sorted(scene.sketches):  # physics
            scene.sketches[sid].step(scene)
        propagate(scene)  # dataflow
        scene.tick = t + 1

    def run_until(self, tick: int) -> None:
        while self.scene.tick <= tick:
            self.run_tick()

    def render(self) -> DrawList:
        return render(self.scene)

    # -- event handling -----------------------------------------------------
    def _apply_event(self, event: EngineEvent, now: int) -> None:
        if isinstance(event, PointerEvent):
            self._pointer(event, now)
        elif isinstance(event, SpawnNumeric):
            self.spawn_numeric(event.value, Point2(event.x, event.y))
        elif isinstance(event, Confirm):
            self.confirm()
        elif isinstance(event, ResumeBreakpoint):
            try:
                self.scene.op_queue.resume_breakpoint(event.sketch, now)
            except NoBreakpointActive:
                pass  # stale resume: nothing to do

    def _pointer(self, event: PointerEvent, now: int) -> None:
        p = Point2(float(event.x), float(event.y))
        if event.phase == "down":
            self._trace_points = [p]
            self._trace_ticks = [now]
            self._pointer_down = True
            hit = self.scene.sketch_at(p)
            self._drag_sketch_id = hit.id if hit is not None else None
        elif event.phase == "move":
            if not self._pointer_down:
                return
            self._trace_points.append(p)
            self._trace_ticks.append(now)
            self._live_drag()
        elif event.phase == "up":
            if not self._pointer_down:
                return
            if p != self._trace_points[-1]:
                self._trace_points.append(p)
                self._trace_ticks.append(now)
            self._pointer_down = False
            self._finish_trace()

    def _live_drag(self) -> None:
        # continuous feedback for grabs (the pendulum bob) while dragging
        if self._drag_sketch_id is None or len(self._trace_points) < 2:
            return
        sketch = self.scene.sketches.get(self._drag_sketch_id)
        if sketch is None:
            return
        trace = Stroke(points=list(self._trace_points), tick_stamps=list(self._trace_ticks))
        sketch.on_drag(trace, self.scene, live=True)

    def _finish_trace(self) -> None:
        points, ticks = self._trace_points, self._trace_ticks
        self._trace_points, self._trace_ticks = [], []
        span = max(math.hypot(p.x - points[0].x, p.y - points[0].y) for p in points)
        if span <= 0.0:
            # a pure tap has no arc length, so it cannot form a Stroke
            self._dispatch(Click(point=points[0]))
            return
        trace = Stroke(points=points, tick_stamps=ticks)
        if self._consume_delete_stroke(trace):
            return
        self._dispatch(classify_gesture(trace, self.scene))

    def _consume_delete_stroke(self, trace: Stroke) -> bool:
        if self._armed_delete is None:
            return False
        sketch_id, expiry = self._armed_delete
        if self.scene.tick > expiry or sketch_id not in self.scene.sketches:
            self._armed_delete = None
            return False
        if not _is_delete_stroke(trace):
            return False
        self._armed_delete = None
        self.scene.remove_sketch(sketch_id)
        return True

    # -- gesture dispatch ------------------------------------------------------
    def _dispatch(self, event: GestureEvent) -> None:
        scene = self.scene
        if isinstance(event, Click):
            self._click(event.point)
        elif isinstance(event, Swipe):
            target = scene.sketch_at(event.start)
            if target is not None:
                target.on_swipe(event.direction, scene)
        elif isinstance(event, CommandDrag):
            apply_command(event, scene)
        elif isinstance(event, Drag):
            self._drag(event)
        elif isinstance(event, GlyphDrawn):
            scene.pending_strokes = list(event.strokes.strokes)
            self.pending_match = recognize(event.strokes, self.library)

    def _click(self, point: Point2) -> None:
        scene = self.scene
        if self.pending_match is not None and scene.pending_strokes:
            x0, y0, x1, y1 = StrokeSet(scene.pending_strokes).bounding_box()
            if x0 <= point.x <= x1 and y0 <= point.y <= y1:
                self.confirm(at=point)
                return
        peripheral = scene.periphery_at(point)
        if peripheral is not None:
            self._armed_delete = (peripheral.id, scene.tick + DELETE_ARM_TICKS)
            return
        target = scene.sketch_at(point)
        if target is not None and scene.op_queue.at_breakpoint(target.id):
            scene.op_queue.resume_breakpoint(target.id, scene.tick)

    def _drag(self, event: Drag) -> None:
        scene = self.scene
        start = event.path.points[0]
        end = event.path.points[-1]
        sketch = scene.sketch_at(start)
        if sketch is None:
            return
        if sketch.type_name == "numeric":
            target = None
            for sid in sorted(scene.sketches, reverse=True):
                other = scene.sketches[sid]
                if other.id != sketch.id and other.bounds().contains(end):
                    target = other
                    break
            if target is not None and target.accepts_drops():
                drag_drop(sketch.id, target.id, scene)
            else:
                t = sketch.transform
                sketch.transform = Transform(
                    position=Point2(end.x, end.y), scale=t.scale, rotation=t.rotation
                )
            return
        if sketch.type_name == "bst":
            inside = sketch.bounds()
            if all(inside.contains(p) for p in event.path.points):
                sketch.on_overlay(event.path, scene)
            return
        sketch.on_drag(event.path, scene, live=False)

    # -- direct commands (scripts, wire protocol) -------------------------------
    def spawn_numeric(self, value: int, at: Point2) -> int:
        from .core_sketches import NumericSketch

        sketch = NumericSketch(
            self.scene.new_sketch_id(),
            Transform(position=at, scale=0.6),
            value=value,
        )
        return self.scene.add_sketch(sketch)

    def confirm(self, at: Point2 | None = None) -> int | None:
        """Instantiate the pending recognition (the confirming click)."""
        if self.pending_match is None or not self.scene.pending_strokes:
            return None
        if at is None:
            at = StrokeSet(self.scene.pending_strokes).center()
        sid = instantiate(self.pending_match, at, self.scene)
        if sid is not None:
            self.pending_match = None
        return sid

    def recognition_hint(self) -> tuple[Match, tuple[float, float, float, float]] | None:
        """Current pending match and the drawn glyph's bounding box."""
        if self.pending_match is None or not self.scene.pending_strokes:
            return None
        return self.pending_match, StrokeSet(self.scene.pending_strokes).bounding_box()
