"""Deterministic replay: script a whole session with pointer events, hash
every frame, and verify the digests repeat exactly.

Run with: python3 demos/replay_hashing.py
"""

import json

from sketchboard import hash_frames, parse_script, run_script
from sketchboard.geometry import resample_polyline
from sketchboard import glyphs

lines = []


def stroke(points, start, duration=30):
    steps = max(2, duration // 2 + 1)
    dense = resample_polyline(points, steps)
    ticks = [start + round(i * duration / (steps - 1)) for i in range(steps)]
    lines.append({"tick": ticks[0], "type": "pointer", "phase": "down", "x": dense[0][0], "y": dense[0][1]})
    for (x, y), t in zip(dense[1:], ticks[1:]):
        lines.append({"tick": t, "type": "pointer", "phase": "move", "x": x, "y": y})
    lines.append({"tick": ticks[-1], "type": "pointer", "phase": "up", "x": dense[-1][0], "y": dense[-1][1]})
    return ticks[-1]


# draw a bst glyph with the pointer, confirm it, drop an 8 onto it
t = 0
for s in glyphs.template_strokes("bst"):
    t = stroke([(x * 1.6 + 350, y * 1.6 + 350) for x, y in s], t, duration=30) + 5
lines.append({"tick": t + 5, "type": "confirm"})
lines.append({"tick": t + 10, "type": "spawn_numeric", "value": 8, "x": 150, "y": 150})
t = stroke([(150, 150), (430, 430)], t + 15, duration=30)

script_text = "\n".join(json.dumps(l) for l in lines)
script = parse_script(script_text)
frames = run_script(script, max_tick=t + 120)

print(f"replayed {len(frames)} frames; sample digests:")
for f in frames[:: len(frames) // 6]:
    print(f"  tick {f.tick:4} digest {f.digest_hex()}")

again = run_script(script, max_tick=t + 120)
print("identical digests on rerun:", [f.digest for f in frames] == [f.digest for f in again])
print(f"whole-session fold: {hash_frames(frames):016x}")
print("(the CLI equivalents: sketchboard run / sketchboard hash)")
