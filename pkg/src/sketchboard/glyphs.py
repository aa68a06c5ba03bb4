"""Built-in glyph template geometry and the default library document.

Templates are authored as waypoint polylines in a unit box (y down) and
scaled to a nominal 100-unit drawing before serialization; the loader
normalizes them again, so the authored size is cosmetic.  Digits are
single-stroke so they never compete with the multi-stroke sketch glyphs
under the stroke-count filter.
"""

from __future__ import annotations

import json
import math

# Acceptance thresholds ship inside the library document so deployments can
# retune them without code changes.
GLYPH_THRESHOLD = 0.30
OVERLAY_THRESHOLD = 0.35
LIBRARY_VERSION = 1

_NOMINAL_SIZE = 100.0


def _arc(cx, cy, rx, ry, a0_deg, a1_deg, n=14):
    """Sampled ellipse arc in screen coordinates (y down, angles clockwise)."""
    pts = []
    for i in range(n):
        a = math.radians(a0_deg + (a1_deg - a0_deg) * i / (n - 1))
        pts.append((cx + rx * math.cos(a), cy + ry * math.sin(a)))
    return pts


def _bez(p0, c, p1, n=12):
    """Sampled quadratic bezier; used for the swooping traversal arrows."""
    pts = []
    for i in range(n):
        t = i / (n - 1)
        pts.append(
            (
                (1 - t) ** 2 * p0[0] + 2 * (1 - t) * t * c[0] + t**2 * p1[0],
                (1 - t) ** 2 * p0[1] + 2 * (1 - t) * t * c[1] + t**2 * p1[1],
            )
        )
    return pts


# Digit strokes, one stroke per digit, in a unit box.
_DIGITS = {
    "0": [_arc(0.5, 0.5, 0.40, 0.48, -90, -450, 28)],
    "1": [[(0.5, 0.02), (0.5, 0.98)]],
    "2": [
        _arc(0.5, 0.30, 0.36, 0.26, -160, 0, 12)
        + [(0.12, 0.95), (0.88, 0.95)]
    ],
    "3": [
        _arc(0.5, 0.27, 0.34, 0.24, -150, 80, 12)
        + _arc(0.5, 0.73, 0.36, 0.25, -100, 150, 12)
    ],
    "4": [[(0.65, 0.03), (0.18, 0.60), (0.88, 0.60), (0.68, 0.42), (0.68, 0.97)]],
    "5": [
        [(0.82, 0.05), (0.25, 0.05), (0.22, 0.42)]
        + _arc(0.48, 0.67, 0.30, 0.27, -80, 160, 12)
    ],
    "6": [
        _arc(0.58, 0.48, 0.40, 0.45, -70, -180, 10)
        + _arc(0.50, 0.70, 0.32, 0.26, 180, -180, 16)
    ],
    "7": [[(0.12, 0.05), (0.88, 0.05), (0.35, 0.97)]],
    "8": [
        _arc(0.5, 0.27, 0.30, 0.23, -90, -450, 16)
        + _arc(0.5, 0.74, 0.34, 0.24, -90, 270, 16)
    ],
    "9": [
        _arc(0.48, 0.30, 0.30, 0.26, 0, -360, 16)
        + [(0.78, 0.30), (0.72, 0.97)]
    ],
}

# Multi-stroke sketch glyphs.
_SKETCH_GLYPHS = {
    # two tree edges fanning out from the root
    "bst": [
        [(0.5, 0.05), (0.08, 0.95)],
        [(0.5, 0.05), (0.92, 0.95)],
    ],
    # rod plus bob
    "pendulum": [
        [(0.5, 0.02), (0.5, 0.60)],
        _arc(0.5, 0.78, 0.18, 0.18, -90, 270, 16),
    ],
    # two axes plus a wave
    "graph": [
        [(0.08, 0.05), (0.08, 0.95)],
        [(0.08, 0.95), (0.95, 0.95)],
        [(0.15, 0.55), (0.30, 0.25), (0.45, 0.55), (0.60, 0.80), (0.75, 0.50), (0.90, 0.30)],
    ],
    # three stacked slots
    "stack": [
        [(0.15, 0.25), (0.85, 0.25)],
        [(0.15, 0.50), (0.85, 0.50)],
        [(0.15, 0.75), (0.85, 0.75)],
    ],
}

_SKETCH_TYPE = {name: "numeric" for name in _DIGITS}
_SKETCH_TYPE.update({name: name for name in _SKETCH_GLYPHS})

# Single-stroke traversal gestures drawn atop a tree sketch.  The arrows
# trace the root / left-child / right-child triangle in the order the
# traversal touches them, with swooping curved arms; the breadth-first
# gesture is a descending zig-zag.  Curvature keeps every straight stroke
# beyond the 0.35 overlay threshold so plain drags never fire a traversal.
OVERLAY_STROKES = {
    "pre_order": (
        _bez((0.5, 0.05), (0.02, 0.35), (0.15, 0.95))
        + _bez((0.15, 0.95), (0.55, 0.5), (0.85, 0.95))[1:]
    ),
    "in_order": (
        _bez((0.2, 0.95), (-0.25, -0.05), (0.5, 0.05))
        + _bez((0.5, 0.05), (1.25, -0.05), (0.8, 0.95))[1:]
    ),
    "post_order": (
        _bez((0.15, 0.95), (0.5, 0.55), (0.85, 0.95))
        + _bez((0.85, 0.95), (0.98, 0.3), (0.5, 0.05))[1:]
    ),
    "breadth_first": [(0.5, 0.02), (0.08, 0.35), (0.92, 0.62), (0.08, 0.98)],
}


def _scaled(strokes):
    return [
        [[round(x * _NOMINAL_SIZE, 4), round(y * _NOMINAL_SIZE, 4)] for x, y in stroke]
        for stroke in strokes
    ]


def builtin_templates() -> list[dict]:
    entries = []
    for name in sorted(_DIGITS):
        entries.append({"name": name, "sketch_type": "numeric", "strokes": _scaled(_DIGITS[name])})
    for name in ("pendulum", "graph", "bst", "stack"):
        entries.append({"name": name, "sketch_type": name, "strokes": _scaled(_SKETCH_GLYPHS[name])})
    return entries


def builtin_library_document() -> dict:
    return {
        "version": LIBRARY_VERSION,
        "glyph_threshold": GLYPH_THRESHOLD,
        "overlay_threshold": OVERLAY_THRESHOLD,
        "templates": builtin_templates(),
    }


def builtin_library_bytes() -> bytes:
    return json.dumps(builtin_library_document(), indent=1).encode("utf-8")


def template_strokes(name: str) -> list[list[tuple[float, float]]]:
    """Board-unit strokes for a built-in template, bit-identical to the
    coordinates stored in the library document (so resubmitting them
    self-matches with score exactly 0)."""
    src = _DIGITS.get(name) or _SKETCH_GLYPHS.get(name)
    if src is None:
        raise KeyError(name)
    return [[(x, y) for x, y in stroke] for stroke in _scaled(src)]


def overlay_template_points(kind: str) -> list[tuple[float, float]]:
    """Board-unit stroke for a built-in overlay gesture template."""
    return [(x, y) for x, y in _scaled([OVERLAY_STROKES[kind]])[0]]
