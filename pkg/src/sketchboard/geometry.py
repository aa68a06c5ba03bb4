"""Stroke geometry: resampling, normalization, and glyph distance.

Strokes are timestamped polylines in board units (origin top-left, y down).
Normalization maps a multi-stroke drawing into a dimensionless frame --
bounding box centered on the origin, larger side scaled to 1 -- so that
matching is invariant to where and how large the glyph was drawn.  Stroke
order and stroke direction stay significant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegenerateStroke, StrokeCountMismatch

# Every stroke is resampled to this many points before matching.
RESAMPLE_POINTS = 32


class Point2(NamedTuple):
    x: float
    y: float


def _as_array(points: Sequence) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected an Nx2 point list, got shape {arr.shape}")
    return arr


@dataclass
class Stroke:
    """One pen-down..pen-up polyline with per-point engine-tick stamps."""

    points: list[Point2]
    tick_stamps: list[int]

    def __post_init__(self):
        self.points = [Point2(float(x), float(y)) for x, y in self.points]
        self.tick_stamps = [int(t) for t in self.tick_stamps]
        if len(self.points) < 2:
            raise DegenerateStroke("stroke needs at least 2 points")
        if len(self.points) != len(self.tick_stamps):
            raise ValueError("points and tick_stamps lengths differ")
        if any(t < 0 for t in self.tick_stamps):
            raise ValueError("tick stamps must be non-negative")
        if any(b < a for a, b in zip(self.tick_stamps, self.tick_stamps[1:])):
            raise ValueError("tick stamps must be non-decreasing")
        if not all(math.isfinite(p.x) and math.isfinite(p.y) for p in self.points):
            raise ValueError("stroke points must be finite")
        if self.arc_length() <= 0.0:
            raise DegenerateStroke("stroke has zero arc length")

    def arc_length(self) -> float:
        arr = _as_array(self.points)
        return float(np.sum(np.linalg.norm(np.diff(arr, axis=0), axis=1)))

    def duration(self) -> int:
        return self.tick_stamps[-1] - self.tick_stamps[0]

    @classmethod
    def from_points(cls, points: Sequence, start_tick: int = 0) -> "Stroke":
        """Build a stroke from bare coordinates, one tick per sample."""
        return cls(
            points=[Point2(float(x), float(y)) for x, y in points],
            tick_stamps=list(range(start_tick, start_tick + len(points))),
        )


@dataclass
class StrokeSet:
    """An ordered multi-stroke drawing, in the order the strokes were drawn."""

    strokes: list[Stroke]

    def __post_init__(self):
        if not self.strokes:
            raise ValueError("stroke set needs at least one stroke")

    def __len__(self) -> int:
        return len(self.strokes)

    def bounding_box(self) -> tuple[float, float, float, float]:
        """(min_x, min_y, max_x, max_y) over all strokes."""
        arr = np.concatenate([_as_array(s.points) for s in self.strokes])
        lo = arr.min(axis=0)
        hi = arr.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    def center(self) -> Point2:
        x0, y0, x1, y1 = self.bounding_box()
        return Point2((x0 + x1) / 2.0, (y0 + y1) / 2.0)


@dataclass
class NormalizedGlyph:
    """Resampled, origin-centered, unit-scaled stroke arrays.

    Each stroke is a (RESAMPLE_POINTS, 2) float array.  The joint bounding
    box is centered on the origin with its larger side equal to 1, so the
    largest absolute coordinate is 0.5 and aspect ratio is preserved.
    """

    strokes: list[np.ndarray]
    stroke_count: int = field(init=False)

    def __post_init__(self):
        self.strokes = [np.asarray(s, dtype=float) for s in self.strokes]
        self.stroke_count = len(self.strokes)

    def stacked(self) -> np.ndarray:
        return np.concatenate(self.strokes)


def resample_polyline(points: Sequence, n: int) -> np.ndarray:
    """Resample a raw polyline to n points at uniform arc-length spacing."""
    if n < 2:
        raise ValueError("resample needs n >= 2")
    arr = _as_array(points)
    seg = np.linalg.norm(np.diff(arr, axis=0), axis=1)
    total = float(seg.sum())
    if total <= 0.0:
        raise DegenerateStroke("cannot resample a zero-length polyline")
    # cumulative arc length at each input vertex, then interpolate x and y
    # against it at n evenly spaced targets
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    targets = np.linspace(0.0, total, n)
    xs = np.interp(targets, cum, arr[:, 0])
    ys = np.interp(targets, cum, arr[:, 1])
    out = np.column_stack([xs, ys])
    # endpoints are exact by construction; pin them against rounding
    out[0] = arr[0]
    out[-1] = arr[-1]
    return out


def resample(stroke: Stroke, n: int) -> list[Point2]:
    """Resample a stroke to n points at uniform arc-length spacing."""
    arr = resample_polyline(stroke.points, n)
    return [Point2(float(x), float(y)) for x, y in arr]


def _resample_chain(arr: np.ndarray, unit: np.ndarray) -> np.ndarray:
    """Lean resampling of an (n,2) chain at `unit` fractions of its arc."""
    deltas = arr[1:] - arr[:-1]
    seg = np.sqrt((deltas * deltas).sum(axis=1))
    cum = np.empty(len(arr))
    cum[0] = 0.0
    np.cumsum(seg, out=cum[1:])
    t = unit * cum[-1]
    idx = np.searchsorted(cum, t, side="right").clip(1, len(arr) - 1)
    c0 = cum[idx - 1]
    span = cum[idx] - c0
    w = ((t - c0) / np.where(span > 0.0, span, 1.0))[:, None]
    out = arr[idx - 1] * (1.0 - w) + arr[idx] * w
    out[0] = arr[0]
    out[-1] = arr[-1]
    return out


_UNIT_TARGETS = np.linspace(0.0, 1.0, RESAMPLE_POINTS)


def _equalize_spacing_python(samples: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    for _ in range(max_iter):
        nxt = _resample_chain(samples, _UNIT_TARGETS)
        moved = float(np.abs(nxt - samples).max())
        samples = nxt
        if moved < tol:
            break
    return samples


try:
    from numba import njit

    @njit(cache=True)
    def _equalize_spacing_jit(samples, tol, max_iter):  # pragma: no cover - jit
        n = samples.shape[0]
        cur = samples.copy()
        nxt = np.empty_like(cur)
        cum = np.empty(n)
        for _ in range(max_iter):
            cum[0] = 0.0
            for i in range(1, n):
                dx = cur[i, 0] - cur[i - 1, 0]
                dy = cur[i, 1] - cur[i - 1, 1]
                cum[i] = cum[i - 1] + math.sqrt(dx * dx + dy * dy)
            total = cum[n - 1]
            j = 1
            for i in range(n):
                t = total * i / (n - 1)
                while j < n - 1 and cum[j] < t:
                    j += 1
                span = cum[j] - cum[j - 1]
                w = (t - cum[j - 1]) / span if span > 0.0 else 0.0
                nxt[i, 0] = cur[j - 1, 0] * (1.0 - w) + cur[j, 0] * w
                nxt[i, 1] = cur[j - 1, 1] * (1.0 - w) + cur[j, 1] * w
            nxt[0] = cur[0]
            nxt[n - 1] = cur[n - 1]
            moved = 0.0
            for i in range(n):
                moved = max(moved, abs(nxt[i, 0] - cur[i, 0]), abs(nxt[i, 1] - cur[i, 1]))
            cur, nxt = nxt, cur
            if moved < tol:
                break
        return cur.copy()

    _HAVE_JIT = True
except ImportError:  # pragma: no cover - numba always present in CI
    _HAVE_JIT = False


def _equalize_spacing(samples: np.ndarray, tol: float, max_iter: int = 600) -> np.ndarray:
    """Iterate arc-length resampling to its fixed point (equal chord lengths).

    A single resampling pass is not stable under re-sampling: corners get cut,
    so resampling the output again moves points.  Iterating converges to the
    configuration where consecutive chords are equal, which re-normalizing
    then reproduces exactly -- this is what makes normalize idempotent.
    """
    if _HAVE_JIT:
        return _equalize_spacing_jit(np.ascontiguousarray(samples), tol, max_iter)
    return _equalize_spacing_python(samples, tol, max_iter)


def normalize(strokes: StrokeSet) -> NormalizedGlyph:
    """Resample each stroke and map the drawing into the normalized frame.

    Centering uses the joint bounding-box center; scaling is uniform by the
    larger bounding-box dimension, so tall and wide glyphs stay distinct.
    """
    x0, y0, x1, y1 = strokes.bounding_box()
    raw_size = max(x1 - x0, y1 - y0)
    if raw_size <= 0.0:
        raise DegenerateStroke("drawing has zero spatial extent")
    tol = 1e-12 * raw_size
    sampled = [
        _equalize_spacing(resample_polyline(s.points, RESAMPLE_POINTS), tol)
        for s in strokes.strokes
    ]
    allpts = np.concatenate(sampled)
    lo = allpts.min(axis=0)
    hi = allpts.max(axis=0)
    extent = hi - lo
    size = float(extent.max())
    if size <= 0.0:
        raise DegenerateStroke("drawing has zero spatial extent")
    center = (lo + hi) / 2.0
    return NormalizedGlyph(strokes=[(s - center) / size for s in sampled])


def glyph_distance(a: NormalizedGlyph, b: NormalizedGlyph) -> float:
    """Mean pointwise Euclidean distance between two normalized glyphs.

    Strokes are compared in drawn order, points in index order; no
    reordering or direction flipping is attempted.
    """
    if a.stroke_count != b.stroke_count:
        raise StrokeCountMismatch(
            f"stroke counts differ: {a.stroke_count} vs {b.stroke_count}"
        )
    pa = a.stacked()
    pb = b.stacked()
    return float(np.mean(np.linalg.norm(pa - pb, axis=1)))
