"""Stack sketch: push/pop, operation history over a link, and the
call-stack simulation driven by a linked traversal.

Run with: python3 demos/stack_calls.py
"""

from sketchboard import OverlayGestureKind, Point2, Scene, Transform, propagate

from sketchboard.ds_sketches import BstSketch, StackSketch, tree_height

scene = Scene()
tree = BstSketch(scene.new_sketch_id(), Transform(position=Point2(300, 400)))
stack = StackSketch(scene.new_sketch_id(), Transform(position=Point2(700, 400)))
scene.add_sketch(tree)
scene.add_sketch(stack)
scene.create_link(tree.id, stack.id)


def run_linked():
    grace = 2
    depths = []
    while grace:
        scene.op_queue.tick(scene.tick)
        propagate(scene)
        depths.append(stack.depth())
        scene.tick += 1
        if scene.op_queue.all_idle():
            grace -= 1
    return depths


# plain pushes and a pop
stack.enqueue_push(1, scene)
stack.enqueue_push(6, scene)
stack.enqueue_push(1, scene)
stack.enqueue_push(8, scene)
run_linked()
print("after pushes:", stack.items)
print("pop ->", stack.pop(scene), "leaving", stack.items)
for _ in range(3):
    stack.pop(scene)
run_linked()

# linked history: the tree reports its operations, the stack displays them
tree.on_drop(9, scene)
run_linked()
tree.on_drop(9, scene)  # present now, so it gets removed
run_linked()
print("operation history:", stack.items)
for _ in range(len(stack.items)):
    stack.pop(scene)
run_linked()

# call-stack simulation: enter/exit records track the recursion exactly
tree.enqueue_traversal(OverlayGestureKind.IN_ORDER, scene)
depths = run_linked()
print(
    f"in-order recursion: max depth {max(depths)} "
    f"(tree height {tree_height(tree.root)} + 1), final depth {stack.depth()}"
)
