"""Glyph recognition against a template library, and overlay-gesture matching.

Recognition filters candidates by stroke count, normalizes the drawing once,
and picks the lowest mean-distance template under the library's threshold.
Overlay gestures are single strokes drawn atop a sketch, matched against the
four built-in traversal templates.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from . import glyphs, registry
from .errors import (
    DuplicateTemplate,
    EmptyLibrary,
    MalformedLibrary,
    UnknownSketchType,
)
from .geometry import (
    DegenerateStroke,
    NormalizedGlyph,
    Stroke,
    StrokeSet,
    glyph_distance,
    normalize,
)


@dataclass(frozen=True)
class GlyphTemplate:
    name: str
    sketch_type: str
    glyph: NormalizedGlyph


@dataclass
class GlyphLibrary:
    templates: list[GlyphTemplate]
    version: int = glyphs.LIBRARY_VERSION
    glyph_threshold: float = glyphs.GLYPH_THRESHOLD
    overlay_threshold: float = glyphs.OVERLAY_THRESHOLD
    _by_name: dict = field(init=False, repr=False)

    def __post_init__(self):
        self._by_name = {t.name: t for t in self.templates}

    def __len__(self) -> int:
        return len(self.templates)

    def get(self, name: str) -> GlyphTemplate | None:
        return self._by_name.get(name)


@dataclass(frozen=True)
class Match:
    template_name: str
    sketch_type: str
    score: float


class OverlayGestureKind(enum.Enum):
    PRE_ORDER = "pre_order"
    IN_ORDER = "in_order"
    POST_ORDER = "post_order"
    BREADTH_FIRST = "breadth_first"


def _overlay_templates() -> dict[OverlayGestureKind, NormalizedGlyph]:
    out = {}
    for kind in OverlayGestureKind:
        pts = glyphs.overlay_template_points(kind.value)
        out[kind] = normalize(StrokeSet([Stroke.from_points(pts)]))
    return out


_OVERLAY_TEMPLATES = _overlay_templates()


def recognize(drawing: StrokeSet, library: GlyphLibrary) -> Match | None:
    """Match a multi-stroke drawing against the library.

    Only templates with the drawing's stroke count compete; the lowest score
    wins if it clears the library threshold, earliest template on ties.
    Returns None when nothing qualifies.
    """
    if not library.templates:
        raise EmptyLibrary("cannot recognize against an empty library")
    drawn = normalize(drawing)
    best: GlyphTemplate | None = None
    best_score = float("inf")
    for template in library.templates:
        if template.glyph.stroke_count != drawn.stroke_count:
            continue
        score = glyph_distance(drawn, template.glyph)
        if score < best_score:
            best, best_score = template, score
    if best is None or best_score > library.glyph_threshold:
        return None
    return Match(template_name=best.name, sketch_type=best.sketch_type, score=best_score)


def recognize_overlay(
    stroke: Stroke,
    kinds: frozenset[OverlayGestureKind] = frozenset(OverlayGestureKind),
    threshold: float = glyphs.OVERLAY_THRESHOLD,
) -> OverlayGestureKind | None:
    """Classify a single stroke drawn atop a sketch as a traversal gesture."""
    drawn = normalize(StrokeSet([stroke]))
    best: OverlayGestureKind | None = None
    best_score = float("inf")
    for kind in OverlayGestureKind:
        if kind not in kinds:
            continue
        score = glyph_distance(drawn, _OVERLAY_TEMPLATES[kind])
        if score < best_score:
            best, best_score = kind, score
    if best is None or best_score > threshold:
        return None
    return best


def load_library(data: bytes, known_types: frozenset[str] | None = None) -> GlyphLibrary:
    """Parse and validate a glyph library document (UTF-8 JSON)."""
    if known_types is None:
        known_types = registry.known_types()
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedLibrary(f"library is not valid UTF-8 JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedLibrary("library document must be a JSON object")

    version = doc.get("version")
    if not isinstance(version, int):
        raise MalformedLibrary("missing or non-integer version")
    raw_templates = doc.get("templates")
    if not isinstance(raw_templates, list) or not raw_templates:
        raise MalformedLibrary("templates must be a non-empty list")

    glyph_threshold = doc.get("glyph_threshold", glyphs.GLYPH_THRESHOLD)
    overlay_threshold = doc.get("overlay_threshold", glyphs.OVERLAY_THRESHOLD)
    if not isinstance(glyph_threshold, (int, float)) or not isinstance(
        overlay_threshold, (int, float)
    ):
        raise MalformedLibrary("thresholds must be numbers")

    templates: list[GlyphTemplate] = []
    seen: set[str] = set()
    for i, entry in enumerate(raw_templates):
        where = f"templates[{i}]"
        if not isinstance(entry, dict):
            raise MalformedLibrary(f"{where} must be an object")
        name = entry.get("name")
        sketch_type = entry.get("sketch_type")
        strokes = entry.get("strokes")
        if not isinstance(name, str) or not name:
            raise MalformedLibrary(f"{where} needs a non-empty name")
        if name in seen:
            raise DuplicateTemplate(f"duplicate template name {name!r}")
        seen.add(name)
        if not isinstance(sketch_type, str) or not sketch_type:
            raise MalformedLibrary(f"{where} needs a sketch_type")
        if sketch_type not in known_types:
            raise UnknownSketchType(
                f"{where} references unregistered sketch type {sketch_type!r}"
            )
        if not isinstance(strokes, list) or not strokes:
            raise MalformedLibrary(f"{where} needs a non-empty strokes list")
        try:
            stroke_set = StrokeSet([Stroke.from_points(pts) for pts in strokes])
            glyph = normalize(stroke_set)
        except (DegenerateStroke, ValueError, TypeError) as exc:
            raise MalformedLibrary(f"{where} has invalid strokes: {exc}") from exc
        templates.append(GlyphTemplate(name=name, sketch_type=sketch_type, glyph=glyph))

    return GlyphLibrary(
        templates=templates,
        version=version,
        glyph_threshold=float(glyph_threshold),
        overlay_threshold=float(overlay_threshold),
    )


def default_library() -> GlyphLibrary:
    """The shipped 14-template library (digits plus the four sketch glyphs)."""
    return load_library(glyphs.builtin_library_bytes(), known_types=registry.BUILTIN_TYPES)
