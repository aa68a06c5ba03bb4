"""Built-in dataflow sketches: numeric literals, the pendulum, the graph.

The pendulum integrates with semi-implicit Euler at one step per tick, so
its damped energy is monotone and replays are exact.  The graph ingests any
numeric value it receives and plots against sample index.
"""

from __future__ import annotations

import math
from collections import deque

from . import registry

from .drawlist import Curve, Line, Oval, Text
from .geometry import Point2, Stroke
from .runtime import ACCENT, INK, PENDING, Scene, Sketch, Value

# 9.8 s^-2 expressed per tick^2 at 60 ticks/s
GRAVITY_OVER_LENGTH = 9.8 / (60.0 * 60.0)
DAMPING = 0.05

GRAPH_CAPACITY = 240

# local-frame pendulum geometry (design box is [-50, 50]^2)
PIVOT = Point2(0.0, -10.0)
ROD_LENGTH = 40.0
BOB_RADIUS = 7.0


@registry.register
class NumericSketch(Sketch):
    type_name = "numeric"

    def __init__(self, sketch_id, transform, value: int = 0):
        super().__init__(sketch_id, transform)
        self.value = int(value)

    @classmethod
    def create(cls, sketch_id, transform, match=None):
        value = int(match.template_name) if match and match.template_name.isdigit() else 0
        return cls(sketch_id, transform, value)

    def output(self) -> Value:
        return self.value

    def draw(self, scene):
        return [
            Oval(center=Point2(0, 0), rx=34, ry=34, color=ACCENT, filled=False),
            Text(text=str(self.value), anchor=Point2(0, 0), size=36, color=INK),
        ]


@registry.register
class PendulumSketch(Sketch):
    type_name = "pendulum"

    def __init__(self, sketch_id, transform):
        super().__init__(sketch_id, transform)
        self.theta = 0.0
        self.omega = 0.0
        self.damping = DAMPING
        self.gravity_over_length = GRAVITY_OVER_LENGTH
        self.grabbed = False

    def step(self, scene):
        if self.grabbed:
            return
        self.omega += -self.gravity_over_length * math.sin(self.theta) - self.damping * self.omega
        self.theta += self.omega

    def output(self) -> Value:
        return self.theta

    def energy(self) -> float:
        return 0.5 * self.omega**2 + self.gravity_over_length * (1.0 - math.cos(self.theta))

    def _bob_local(self) -> Point2:
        return Point2(
            PIVOT.x + ROD_LENGTH * math.sin(self.theta),
            PIVOT.y + ROD_LENGTH * math.cos(self.theta),
        )

    def _pointer_angle(self, p: Point2) -> float:
        local = self.to_local(p)
        return math.atan2(local.x - PIVOT.x, local.y - PIVOT.y)

    def on_drag(self, path: Stroke, scene: Scene, live: bool) -> None:
        if not self.grabbed:
            bob = self._bob_local()
            start = self.to_local(path.points[0])
            if math.hypot(start.x - bob.x, start.y - bob.y) > BOB_RADIUS * 2.5:
                return
            self.grabbed = True
        self.theta = self._pointer_angle(path.points[-1])
        if not live:
            # release: angular speed from the last two samples
            if len(path.points) >= 2:
                a1 = self._pointer_angle(path.points[-1])
                a0 = self._pointer_angle(path.points[-2])
                dticks = max(path.tick_stamps[-1] - path.tick_stamps[-2], 1)
                self.omega = math.remainder(a1 - a0, math.tau) / dticks
            else:
                self.omega = 0.0
            self.grabbed = False

    def draw(self, scene):
        bob = self._bob_local()
        return [
            Oval(center=PIVOT, rx=2.5, ry=2.5, color=INK, filled=True),
            Line(p0=PIVOT, p1=bob, color=INK, width=2.0),
            Oval(center=bob, rx=BOB_RADIUS, ry=BOB_RADIUS, color=ACCENT, filled=True),
        ]


@registry.register
class GraphSketch(Sketch):
    type_name = "graph"

    def __init__(self, sketch_id, transform):
        super().__init__(sketch_id, transform)
        self.samples: deque[float] = deque(maxlen=GRAPH_CAPACITY)

    def ingest(self, value: Value, scene: Scene) -> None:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            return  # tolerant ingest: non-numbers are outside the contract
        self.samples.append(float(value))

    def draw(self, scene):
        h = self.LOCAL_HALF
        cmds = [
            Line(p0=Point2(-h + 5, -h + 5), p1=Point2(-h + 5, h - 5), color=PENDING, width=1.0),
            Line(p0=Point2(-h + 5, h - 5), p1=Point2(h - 5, h - 5), color=PENDING, width=1.0),
        ]
        if len(self.samples) >= 2:
            lo = min(self.samples)
            hi = max(self.samples)
            span = hi - lo if hi > lo else 1.0
            n = len(self.samples)
            pts = tuple(
                Point2(
                    -h + 8 + (2 * h - 16) * i / (GRAPH_CAPACITY - 1),
                    h - 8 - (2 * h - 16) * ((s - lo) / span),
                )
                for i, s in enumerate(self.samples)
            )
            cmds.append(Curve(points=pts, color=ACCENT, width=1.5))
        return cmds
