"""The tree sketch: animated inserts, predecessor-rule removal, traversal
gestures, and leftward-swipe undo.

Run with: python3 demos/bst_traversals.py
"""

from sketchboard import OverlayGestureKind, Point2, Scene, Transform
from sketchboard.animator import drain
from sketchboard.ds_sketches import BstSketch, in_order_values
from sketchboard.runtime import SwipeDirection


def settle(scene):
    scene.tick = drain(scene.op_queue, scene.tick) + 1


scene = Scene()
tree = BstSketch(scene.new_sketch_id(), Transform(position=Point2(400, 400)))
scene.add_sketch(tree)
print("default population (in-order):", in_order_values(tree.root))

# dropping a numeric routes by presence: new value inserts, existing removes
tree.on_drop(9, scene)
settle(scene)
print("after drop 9:", in_order_values(tree.root), "->", tree.last_record)

tree.on_drop(4, scene)  # 4 is present, so this removes it (predecessor rule)
settle(scene)
print("after drop 4:", in_order_values(tree.root), "->", tree.last_record)

for kind in OverlayGestureKind:
    tree.enqueue_traversal(kind, scene)
    settle(scene)
    print(f"{kind.value:14}: visits {tree.visit_log}")

tree.on_swipe(SwipeDirection.LEFT, scene)  # undo the removal
print("after one undo:", in_order_values(tree.root))
tree.on_swipe(SwipeDirection.LEFT, scene)  # undo the insert
print("after two undos:", in_order_values(tree.root))
