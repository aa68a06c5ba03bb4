"""Live-presentation sketch engine.

Hand-drawn glyphs are recognized against a template library and become
interactive, animated sketch objects that exchange data over user-drawn
links.  Ships binary-search-tree and stack sketches with stepwise-animated
algorithms, a deterministic headless replay harness, and a wire-protocol
server for browser canvas clients.
"""

from .animator import Breakpoint, Frame, OpQueue, OpStatus, Pause, interpolate
from .drawlist import (
    Curve,
    Line,
    Oval,
    PopTransform,
    PushTransform,
    Text,
    Transform,
    canonical_serialization,
    drawlist_digest,
    fnv1a,
)
from .engine import Confirm, Engine, PointerEvent, ResumeBreakpoint, SpawnNumeric
from .errors import (
    BoardError,
    DegenerateStroke,
    DuplicateLink,
    DuplicateTemplate,
    EmptyLibrary,
    FrameMismatch,
    MalformedLibrary,
    MalformedScript,
    NoBreakpointActive,
    SelfLink,
    StrokeCountMismatch,
    UnknownSketch,
    UnknownSketchType,
)
from .geometry import NormalizedGlyph, Point2, Stroke, StrokeSet, glyph_distance, normalize, resample
from .recognizer import (
    GlyphLibrary,
    GlyphTemplate,
    Match,
    OverlayGestureKind,
    default_library,
    load_library,
    recognize,
    recognize_overlay,
)
from .runtime import Record, Scene, Sketch, classify_gesture, propagate, render
from .session import FrameSnapshot, ScriptEvent, hash_frames, parse_script, run_script

__version__ = "0.1.0"

__all__ = [
    "Breakpoint",
    "Frame",
    "OpQueue",
    "OpStatus",
    "Pause",
    "interpolate",
    "Curve",
    "Line",
    "Oval",
    "PopTransform",
    "PushTransform",
    "Text",
    "Transform",
    "canonical_serialization",
    "drawlist_digest",
    "fnv1a",
    "Confirm",
    "Engine",
    "PointerEvent",
    "ResumeBreakpoint",
    "SpawnNumeric",
    "BoardError",
    "DegenerateStroke",
    "DuplicateLink",
    "DuplicateTemplate",
    "EmptyLibrary",
    "FrameMismatch",
    "MalformedLibrary",
    "MalformedScript",
    "NoBreakpointActive",
    "SelfLink",
    "StrokeCountMismatch",
    "UnknownSketch",
    "UnknownSketchType",
    "NormalizedGlyph",
    "Point2",
    "Stroke",
    "StrokeSet",
    "glyph_distance",
    "normalize",
    "resample",
    "GlyphLibrary",
    "GlyphTemplate",
    "Match",
    "OverlayGestureKind",
    "default_library",
    "load_library",
    "recognize",
    "recognize_overlay",
    "Record",
    "Scene",
    "Sketch",
    "classify_gesture",
    "propagate",
    "render",
    "FrameSnapshot",
    "ScriptEvent",
    "hash_frames",
    "parse_script",
    "run_script",
]
