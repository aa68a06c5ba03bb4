"""Numeric dataflow: a swinging pendulum streams its angle into a graph.

Run with: python3 demos/pendulum_graph.py
"""

from sketchboard import Point2, Scene, Transform, propagate
from sketchboard.core_sketches import GraphSketch, PendulumSketch

scene = Scene()
pendulum = PendulumSketch(scene.new_sketch_id(), Transform(position=Point2(300, 300)))
graph = GraphSketch(scene.new_sketch_id(), Transform(position=Point2(700, 300)))
scene.add_sketch(pendulum)
scene.add_sketch(graph)
scene.create_link(pendulum.id, graph.id)

pendulum.theta = 0.9  # pulled aside and released
pendulum.damping = 0.01  # lighter than the default, to show several swings

for _ in range(240):  # four simulated seconds, exactly one ring buffer
    pendulum.step(scene)
    propagate(scene)
    scene.tick += 1

samples = list(graph.samples)
print(f"graph buffered {len(samples)} samples (ring capacity {graph.samples.maxlen})")
print(f"first {samples[0]:+.3f}, last {samples[-1]:+.3f}, energy {pendulum.energy():.6f}")

# crude sparkline of the damped swing
lo, hi = min(samples), max(samples)
rows = 12
grid = [[" "] * 78 for _ in range(rows)]
for col in range(78):
    s = samples[int(col * (len(samples) - 1) / 77)]
    row = int((hi - s) / (hi - lo + 1e-9) * (rows - 1))
    grid[row][col] = "*"
print("\n".join("".join(r) for r in grid))
