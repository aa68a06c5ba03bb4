"""Deterministic scheduling of resumable, multi-tick operations.

An operation is a generator that yields pause points and eventually returns
a value.  The queue advances each sketch's head operation at most once per
tick, entirely as a function of (queue contents, tick number) -- wall clock
never enters, so replays are exact.

Faults are isolated: a guard captures the owner's state right before every
advance and restores it if the step raises, leaving the data structure as it
was at the last yield.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Generator, Protocol

from .errors import NoBreakpointActive

# Pause cap: 10 seconds at 60 ticks/s.
MAX_PAUSE_TICKS = 600

# Default pacing: node-visit highlight and movement tween durations.
VISIT_PAUSE_TICKS = 18
TWEEN_TICKS = 24


class YieldPoint:
    """Base class for the values an operation may yield."""


@dataclass(frozen=True)
class Pause(YieldPoint):
    """Suspend for a fixed number of ticks (1..600)."""

    ticks: int

    def __post_init__(self):
        if not isinstance(self.ticks, int) or not 1 <= self.ticks <= MAX_PAUSE_TICKS:
            raise ValueError(f"Pause ticks must be in 1..{MAX_PAUSE_TICKS}")


@dataclass(frozen=True)
class Frame(YieldPoint):
    """Let the board redraw, resume on the next tick."""


@dataclass(frozen=True)
class Breakpoint(YieldPoint):
    """Freeze until the user resumes the owning sketch."""

    tag: str = ""


class Guard(Protocol):
    """Snapshot/rollback hook for crash isolation of a sketch's state."""

    def capture(self) -> object: ...

    def restore(self, token: object) -> None: ...


class OpStatus(enum.Enum):
    QUEUED = "queued"
    RUNNING = "running"
    PAUSED = "paused"
    AT_BREAKPOINT = "at_breakpoint"
    DONE = "done"


@dataclass
class ResumableOp:
    op_id: int
    owner: int
    step: Generator[YieldPoint, None, object]
    guard: Guard | None = None
    status: OpStatus = OpStatus.QUEUED
    resume_at: int = 0
    result: object = None
    error: BaseException | None = None
    breakpoint_tag: str = ""
    last_advanced: int = -1


class OpQueue:
    """Per-owner FIFO queues of resumable operations."""

    def __init__(self):
        self._queues: dict[int, list[ResumableOp]] = {}
        self._next_op_id = 1
        self._last_tick = -1
        self.completed: list[ResumableOp] = []

    def new_op(
        self,
        owner: int,
        step: Generator[YieldPoint, None, object],
        guard: Guard | None = None,
    ) -> ResumableOp:
        op = ResumableOp(op_id=self._next_op_id, owner=owner, step=step, guard=guard)
        self._next_op_id += 1
        return op

    def enqueue(self, op: ResumableOp) -> None:
        if op.status is not OpStatus.QUEUED:
            raise ValueError("only freshly queued ops may be enqueued")
        self._queues.setdefault(op.owner, []).append(op)

    def idle(self, owner: int) -> bool:
        return not self._queues.get(owner)

    def all_idle(self) -> bool:
        return all(not q for q in self._queues.values())

    def head(self, owner: int) -> ResumableOp | None:
        q = self._queues.get(owner)
        return q[0] if q else None

    def pending(self, owner: int) -> int:
        return len(self._queues.get(owner, ()))

    def at_breakpoint(self, owner: int) -> bool:
        op = self.head(owner)
        return op is not None and op.status is OpStatus.AT_BREAKPOINT

    def next_due(self) -> int | None:
        """Earliest tick at which any head op can advance, or None."""
        due = None
        for q in self._queues.values():
            if not q:
                continue
            op = q[0]
            if op.status is OpStatus.PAUSED:
                t = op.resume_at
            elif op.status is OpStatus.QUEUED:
                t = self._last_tick + 1
            else:
                continue
            due = t if due is None else min(due, t)
        return due

    def tick(self, now: int) -> None:
        """Advance every owner's head op that is due at `now`."""
        if now <= self._last_tick:
            raise ValueError(f"tick {now} is not after {self._last_tick}")
        self._last_tick = now
        for owner in sorted(self._queues):
            q = self._queues[owner]
            if not q:
                continue
            op = q[0]
            if op.status is OpStatus.QUEUED:
                # reached the head: runs from the next tick
                op.status = OpStatus.PAUSED
                op.resume_at = now + 1
            elif op.status is OpStatus.PAUSED and op.resume_at <= now:
                self._advance(owner, op, now)

    def resume_breakpoint(self, owner: int, now: int) -> None:
        op = self.head(owner)
        if op is None or op.status is not OpStatus.AT_BREAKPOINT:
            raise NoBreakpointActive(f"sketch {owner} has no op paused at a breakpoint")
        op.status = OpStatus.PAUSED
        op.resume_at = now + 1

    def _advance(self, owner: int, op: ResumableOp, now: int) -> None:
        assert op.last_advanced < now, "op advanced twice in one tick"
        op.last_advanced = now
        op.status = OpStatus.RUNNING
        token = op.guard.capture() if op.guard is not None else None
        try:
            item = next(op.step)
        except StopIteration as stop:
            op.status = OpStatus.DONE
            op.result = stop.value
            self._finish(owner, op)
            return
        except Exception as exc:
            if op.guard is not None:
                op.guard.restore(token)
            op.status = OpStatus.DONE
            op.error = exc
            self._finish(owner, op)
            return
        if isinstance(item, Pause):
            op.status = OpStatus.PAUSED
            op.resume_at = now + item.ticks
        elif isinstance(item, Frame):
            op.status = OpStatus.PAUSED
            op.resume_at = now + 1
        elif isinstance(item, Breakpoint):
            op.status = OpStatus.AT_BREAKPOINT
            op.breakpoint_tag = item.tag
        else:
            # treat a malformed yield as a fault, with the same isolation
            if op.guard is not None:
                op.guard.restore(token)
            op.status = OpStatus.DONE
            op.error = TypeError(f"op yielded {item!r}, expected a YieldPoint")
            self._finish(owner, op)

    def _finish(self, owner: int, op: ResumableOp) -> None:
        q = self._queues[owner]
        q.pop(0)
        op.step.close()
        self.completed.append(op)
        if q:
            # successor starts from the next tick
            q[0].status = OpStatus.PAUSED
            q[0].resume_at = self._last_tick + 1


def drain(queue: OpQueue, now: int, limit: int = 1_000_000) -> int:
    """Advance ticks (jumping idle gaps) until no op is runnable.

    `now` is the last tick already processed; the first tick this runs is
    now + 1.  Returns the last tick processed.  Ops at breakpoints are not
    runnable, so a queue frozen at a breakpoint terminates the drain.
    """
    for _ in range(limit):
        due = queue.next_due()
        if due is None:
            return now
        now = max(now + 1, due)
        queue.tick(now)
    raise RuntimeError("drain did not settle within the tick limit")


def interpolate(a: float, b: float, t: float) -> float:
    """Smoothstep blend between a and b; t is clamped to [0, 1]."""
    t = 0.0 if t < 0.0 else 1.0 if t > 1.0 else t
    return a + (b - a) * (3.0 * t * t - 2.0 * t * t * t)
