"""Glyph recognition walkthrough: jittered drawings against the library.

Run with: python3 demos/recognition.py
"""

import numpy as np

from sketchboard import Stroke, StrokeSet, recognize, default_library
from sketchboard import glyphs

library = default_library()
print(f"library: {len(library)} templates, glyph threshold {library.glyph_threshold}")

rng = np.random.default_rng(1)
for name in ("3", "8", "bst", "pendulum", "graph", "stack"):
    strokes = glyphs.template_strokes(name)
    allpts = np.concatenate([np.asarray(s) for s in strokes])
    diag = float(np.hypot(*(allpts.max(0) - allpts.min(0))))
    drawing = StrokeSet(
        [
            Stroke.from_points((np.asarray(s) + rng.normal(0, 0.02 * diag, (len(s), 2))).tolist())
            for s in strokes
        ]
    )
    match = recognize(drawing, library)
    print(f"  drew jittered {name!r:12} -> {match.template_name!r} (score {match.score:.4f})")

# a scribble nowhere near any template is rejected
scribble = StrokeSet([Stroke.from_points((rng.normal(0, 1.5, (30, 2)) + 500).tolist())])
print(f"  scribble -> {recognize(scribble, library)}")
