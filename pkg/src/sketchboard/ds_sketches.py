"""Data-structure sketches: the animated binary search tree and LIFO stack.

Tree mutations run as resumable ops that highlight the nodes the algorithm
touches, pause per visit, and emit a sequenced operation record on
completion.  The stack consumes those records over links: plain operation
records become a history display, enter/exit records drive a call-stack
simulation with strict frame matching.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import registry
from .animator import (
    Breakpoint,
    Frame,
    Pause,
    TWEEN_TICKS,
    VISIT_PAUSE_TICKS,
    interpolate,
)
from .drawlist import Curve, Line, Oval, Text
from .errors import FrameMismatch
from .geometry import Point2, Stroke
from .recognizer import OverlayGestureKind, recognize_overlay
from .runtime import (
    ACCENT,
    ERROR,
    INK,
    PENDING,
    Record,
    Scene,
    SELECTED,
    Sketch,
    SwipeDirection,
    VISITED,
    Value,
    value_to_text,
)

SNAPSHOT_LIMIT = 32
DEFAULT_POPULATION = (4, 2, 6, 1, 3, 5, 7)


class Empty:
    """Result of popping an empty stack."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Empty"


EMPTY = Empty()


@dataclass
class TreeNode:
    value: int
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    highlight: str | None = None  # render-only: None | "visited" | "selected"
    layout: Point2 = field(default_factory=lambda: Point2(0.0, 0.0))


def clone(node: TreeNode | None) -> TreeNode | None:
    if node is None:
        return None
    return TreeNode(
        value=node.value,
        left=clone(node.left),
        right=clone(node.right),
        highlight=node.highlight,
        layout=node.layout,
    )


def tree_equal(a: TreeNode | None, b: TreeNode | None) -> bool:
    if a is None or b is None:
        return a is b or (a is None and b is None)
    return a.value == b.value and tree_equal(a.left, b.left) and tree_equal(a.right, b.right)


def in_order_values(node: TreeNode | None) -> list[int]:
    if node is None:
        return []
    return in_order_values(node.left) + [node.value] + in_order_values(node.right)


def tree_height(node: TreeNode | None) -> int:
    """Height in edges; -1 for the empty tree."""
    if node is None:
        return -1
    return 1 + max(tree_height(node.left), tree_height(node.right))


def tree_count(node: TreeNode | None) -> int:
    return 0 if node is None else 1 + tree_count(node.left) + tree_count(node.right)


def check_bst_invariant(node: TreeNode | None, lo=None, hi=None) -> bool:
    if node is None:
        return True
    if lo is not None and node.value <= lo:
        return False
    if hi is not None and node.value >= hi:
        return False
    return check_bst_invariant(node.left, lo, node.value) and check_bst_invariant(
        node.right, node.value, hi
    )


class _BstGuard:
    """Rolls the whole tree state back to the last yield on a fault."""

    def __init__(self, sketch: "BstSketch"):
        self.sketch = sketch

    def capture(self):
        s = self.sketch
        return (clone(s.root), s.op_seq, s.last_record, list(s.snapshots), list(s.visit_log))

    def restore(self, token):
        s = self.sketch
        s.root, s.op_seq, s.last_record, s.snapshots, s.visit_log = (
            token[0],
            token[1],
            token[2],
            list(token[3]),
            list(token[4]),
        )


@registry.register
class BstSketch(Sketch):
    type_name = "bst"

    def __init__(self, sketch_id, transform, populate: bool = True):
        super().__init__(sketch_id, transform)
        self.root: TreeNode | None = None
        self.snapshots: list[TreeNode | None] = []
        self.op_seq = 0
        self.last_record: Value = None
        self.visit_log: list[int] = []
        self.breakpoints_enabled = False  # pause removals before replacement
        if populate:
            for v in DEFAULT_POPULATION:
                self._attach(v)

    # -- plain structure helpers (no animation) --------------------------
    def _attach(self, v: int) -> bool:
        if self.root is None:
            self.root = TreeNode(v)
            return True
        node = self.root
        while True:
            if v == node.value:
                return False
            if v < node.value:
                if node.left is None:
                    node.left = TreeNode(v)
                    return True
                node = node.left
            else:
                if node.right is None:
                    node.right = TreeNode(v)
                    return True
                node = node.right

    def contains(self, v: int) -> bool:
        node = self.root
        while node is not None:
            if v == node.value:
                return True
            node = node.left if v < node.value else node.right
        return False

    def output(self) -> Value:
        return self.last_record

    def _emit(self, kind: str, value: int) -> Record:
        rec = Record(kind=kind, fields={"value": value}, seq=self.op_seq)
        self.op_seq += 1
        self.last_record = rec
        return rec

    def _push_snapshot(self, pre_root: TreeNode | None) -> None:
        self.snapshots.append(pre_root)
        if len(self.snapshots) > SNAPSHOT_LIMIT:
            self.snapshots.pop(0)

    # -- interaction ------------------------------------------------------
    def accepts_drops(self) -> bool:
        return True

    def on_drop(self, value: int, scene: Scene) -> None:
        # presence decides: existing value is removed, new value inserted
        if self.contains(value):
            self.enqueue_remove(value, scene)
        else:
            self.enqueue_insert(value, scene)

    def on_overlay(self, stroke: Stroke, scene: Scene) -> None:
        kind = recognize_overlay(stroke, threshold=scene.overlay_threshold)
        if kind is not None:
            self.enqueue_traversal(kind, scene)

    def on_swipe(self, direction: str, scene: Scene) -> bool:
        if direction == SwipeDirection.LEFT:
            self.undo(scene)
            return True
        return False

    def undo(self, scene: Scene) -> bool:
        """Restore the most recent pre-op snapshot; rejected mid-animation."""
        if not scene.op_queue.idle(self.id) or not self.snapshots:
            self.flash(scene)
            return False
        self.root = self.snapshots.pop()
        return True

    # -- resumable ops ----------------------------------------------------
    def enqueue_insert(self, value: int, scene: Scene):
        op = scene.op_queue.new_op(self.id, self._insert_gen(value, scene), guard=_BstGuard(self))
        scene.op_queue.enqueue(op)
        return op

    def enqueue_remove(self, value: int, scene: Scene):
        op = scene.op_queue.new_op(self.id, self._remove_gen(value, scene), guard=_BstGuard(self))
        scene.op_queue.enqueue(op)
        return op

    def enqueue_traversal(self, kind: OverlayGestureKind, scene: Scene):
        op = scene.op_queue.new_op(
            self.id, self._traverse_gen(kind, scene), guard=_BstGuard(self)
        )
        scene.op_queue.enqueue(op)
        return op

    def _visit(self, node: TreeNode, log: bool = True):
        node.highlight = "visited"
        if log:
            self.visit_log.append(node.value)
        yield Pause(VISIT_PAUSE_TICKS)
        node.highlight = None

    def _insert_gen(self, value: int, scene: Scene):
        pre = clone(self.root)
        if self.root is None:
            yield Frame()
            self.root = TreeNode(value)
        else:
            node = self.root
            while True:
                yield from self._visit(node, log=False)
                if value == node.value:
                    # duplicate: brief rejection flash, no mutation, no record
                    self.flash(scene)
                    yield Frame()
                    return None
                if value < node.value:
                    if node.left is None:
                        node.left = TreeNode(value)
                        break
                    node = node.left
                else:
                    if node.right is None:
                        node.right = TreeNode(value)
                        break
                    node = node.right
        self._push_snapshot(pre)
        return self._emit("insert", value)

    def _remove_gen(self, value: int, scene: Scene):
        pre = clone(self.root)
        parent: TreeNode | None = None
        side = ""
        node = self.root
        while node is not None:
            yield from self._visit(node, log=False)
            if value == node.value:
                break
            parent, side = node, ("left" if value < node.value else "right")
            node = getattr(node, side)
        if node is None:
            self.flash(scene)
            yield Frame()
            return None

        def replace_in_parent(child: TreeNode | None):
            if parent is None:
                self.root = child
            else:
                setattr(parent, side, child)

        if node.left is not None and node.right is not None:
            # two children: hunt down the in-order predecessor for a replacement
            node.highlight = "selected"
            yield Pause(VISIT_PAUSE_TICKS)
            pred_parent, pred = node, node.left
            yield from self._visit(pred, log=False)
            while pred.right is not None:
                pred_parent, pred = pred, pred.right
                yield from self._visit(pred, log=False)
            pred.highlight = "selected"
            if self.breakpoints_enabled:
                yield Breakpoint("before-replace")
            yield Pause(TWEEN_TICKS)  # replacement move
            node.value = pred.value
            node.highlight = None
            pred.highlight = None
            # the predecessor has no right child; its left subtree moves up
            if pred_parent is node:
                pred_parent.left = pred.left
            else:
                pred_parent.right = pred.left
        else:
            child = node.left if node.left is not None else node.right
            yield Frame()
            replace_in_parent(child)
        self._push_snapshot(pre)
        return self._emit("remove", value)

    def _traverse_gen(self, kind: OverlayGestureKind, scene: Scene):
        self.visit_log = []
        if self.root is None:
            return None
        if kind is OverlayGestureKind.BREADTH_FIRST:
            queue = [self.root]
            while queue:
                node = queue.pop(0)
                self._emit("enter", node.value)
                yield Frame()
                yield from self._visit(node)
                self._emit("exit", node.value)
                yield Frame()
                if node.left is not None:
                    queue.append(node.left)
                if node.right is not None:
                    queue.append(node.right)
        else:
            yield from self._walk(self.root, kind)
        return None

    def _walk(self, node: TreeNode, kind: OverlayGestureKind):
        self._emit("enter", node.value)
        yield Frame()
        if kind is OverlayGestureKind.PRE_ORDER:
            yield from self._visit(node)
        if node.left is not None:
            yield from self._walk(node.left, kind)
        if kind is OverlayGestureKind.IN_ORDER:
            yield from self._visit(node)
        if node.right is not None:
            yield from self._walk(node.right, kind)
        if kind is OverlayGestureKind.POST_ORDER:
            yield from self._visit(node)
        self._emit("exit", node.value)
        yield Frame()

    # -- drawing ----------------------------------------------------------
    def _layout(self) -> list[TreeNode]:
        """Assign layout: x by in-order index, y by depth."""
        nodes: list[tuple[TreeNode, int]] = []

        def walk(n: TreeNode | None, depth: int):
            if n is None:
                return
            walk(n.left, depth + 1)
            nodes.append((n, depth))
            walk(n.right, depth + 1)

        walk(self.root, 0)
        if not nodes:
            return []
        h = self.LOCAL_HALF
        count = len(nodes)
        rows = max(d for _, d in nodes) + 1
        for i, (n, depth) in enumerate(nodes):
            n.layout = Point2(
                -h + 2 * h * (i + 0.5) / count,
                -h + 10 + (2 * h - 20) * ((depth + 0.5) / rows),
            )
        return [n for n, _ in nodes]

    def draw(self, scene):
        nodes = self._layout()
        cmds = []

        def edges(n: TreeNode | None):
            if n is None:
                return
            for child in (n.left, n.right):
                if child is not None:
                    cmds.append(Line(p0=n.layout, p1=child.layout, color=INK, width=1.0))
                    edges(child)

        edges(self.root)
        for n in nodes:
            color = {"visited": VISITED, "selected": SELECTED}.get(n.highlight, INK)
            cmds.append(Oval(center=n.layout, rx=6.0, ry=6.0, color=color, filled=n.highlight is not None))
            cmds.append(Text(text=str(n.value), anchor=Point2(n.layout.x, n.layout.y - 9), size=8, color=color))
        if self.is_flashing(scene):
            cmds.append(Oval(center=Point2(0, 0), rx=self.LOCAL_HALF, ry=self.LOCAL_HALF, color=ERROR, filled=False))
        return cmds


class _StackGuard:
    def __init__(self, sketch: "StackSketch"):
        self.sketch = sketch

    def capture(self):
        s = self.sketch
        return (list(s.items), list(s.frame_meta), s.last_seq_processed, s.mode, s.incoming)

    def restore(self, token):
        s = self.sketch
        s.items, s.frame_meta, s.last_seq_processed, s.mode, s.incoming = (
            list(token[0]),
            list(token[1]),
            token[2],
            token[3],
            token[4],
        )


@registry.register
class StackSketch(Sketch):
    type_name = "stack"

    VISIBLE_SLOTS = 6

    def __init__(self, sketch_id, transform):
        super().__init__(sketch_id, transform)
        self.items: list[Value] = []
        self.frame_meta: list[int | None] = []  # value for enter frames, else None
        self.last_seq_processed = -1
        self.mode: str | None = None  # None | "history" | "callstack"
        self.incoming: tuple[Value, int, int] | None = None  # (value, t0, t1) tween
        self.outgoing: tuple[Value, int, int] | None = None

    def output(self) -> Value:
        return self.items[-1] if self.items else None

    def depth(self) -> int:
        return len(self.items)

    # -- push / pop --------------------------------------------------------
    def accepts_drops(self) -> bool:
        return True

    def on_drop(self, value: int, scene: Scene) -> None:
        self.enqueue_push(value, scene)

    def enqueue_push(self, value: Value, scene: Scene):
        op = scene.op_queue.new_op(self.id, self._push_gen(value, scene), guard=_StackGuard(self))
        scene.op_queue.enqueue(op)
        return op

    def _push_gen(self, value: Value, scene: Scene):
        # the new value descends onto the top slot, then lands
        self.incoming = (value, scene.tick, scene.tick + TWEEN_TICKS)
        yield Pause(TWEEN_TICKS)
        self.items.append(value)
        self.frame_meta.append(None)
        self.incoming = None
        return value

    def pop(self, scene: Scene) -> Value:
        """Remove and return the top item; Empty (with a shake) when empty."""
        if not self.items:
            self.flash(scene)
            return EMPTY
        value = self.items.pop()
        self.frame_meta.pop()
        self.outgoing = (value, scene.tick, scene.tick + TWEEN_TICKS)
        op = scene.op_queue.new_op(self.id, self._pop_anim_gen(), guard=None)
        scene.op_queue.enqueue(op)
        return value

    def _pop_anim_gen(self):
        yield Pause(TWEEN_TICKS)
        self.outgoing = None

    def on_swipe(self, direction: str, scene: Scene) -> bool:
        if direction == SwipeDirection.DOWN:
            self.pop(scene)
            return True
        return False

    def on_drag(self, path: Stroke, scene: Scene, live: bool) -> None:
        if live:
            return
        start, end = path.points[0], path.points[-1]
        dx, dy = end.x - start.x, end.y - start.y
        if dy > 30 * self.transform.scale and dy > abs(dx):
            self.pop(scene)

    # -- linked behavior ----------------------------------------------------
    def ingest(self, value: Value, scene: Scene) -> None:
        """Record-driven pushes and pops, deduplicated by sequence number."""
        if not isinstance(value, Record):
            return
        if value.seq <= self.last_seq_processed:
            return  # the link redelivers every tick; act once per emission
        self.last_seq_processed = value.seq
        v = value.fields.get("value")
        if value.kind in ("insert", "remove", "visit"):
            self.mode = "history"
            self.items.append(f"{value.kind}({value_to_text(v)})")
            self.frame_meta.append(None)
        elif value.kind == "enter":
            self.mode = "callstack"
            self.items.append(f"enter({value_to_text(v)})")
            self.frame_meta.append(v if isinstance(v, int) else None)
        elif value.kind == "exit":
            if not self.frame_meta or self.frame_meta[-1] != v:
                raise FrameMismatch(
                    f"exit({v!r}) does not match top frame "
                    f"{self.frame_meta[-1] if self.frame_meta else None!r}"
                )
            self.items.pop()
            self.frame_meta.pop()

    # -- drawing -------------------------------------------------------------
    def draw(self, scene):
        h = self.LOCAL_HALF
        slot_h = 14.0
        width = 2 * h - 16
        cmds = [
            Line(p0=Point2(-width / 2, h - 4), p1=Point2(width / 2, h - 4), color=INK, width=2.0),
            Line(p0=Point2(-width / 2, h - 4), p1=Point2(-width / 2, -h + 10), color=INK, width=1.0),
            Line(p0=Point2(width / 2, h - 4), p1=Point2(width / 2, -h + 10), color=INK, width=1.0),
        ]
        shown = self.items[-self.VISIBLE_SLOTS :]
        hidden = len(self.items) - len(shown)
        for i, item in enumerate(shown):
            y = h - 4 - slot_h * (i + 1)
            cmds.append(
                Curve(
                    points=(
                        Point2(-width / 2 + 2, y + slot_h - 2),
                        Point2(width / 2 - 2, y + slot_h - 2),
                        Point2(width / 2 - 2, y + 2),
                        Point2(-width / 2 + 2, y + 2),
                        Point2(-width / 2 + 2, y + slot_h - 2),
                    ),
                    color=ACCENT,
                    width=1.0,
                )
            )
            cmds.append(Text(text=value_to_text(item), anchor=Point2(0, y + 3), size=9, color=INK))
        if hidden:
            cmds.append(Text(text=f"+{hidden}", anchor=Point2(0, h - 2), size=7, color=PENDING))
        if self.incoming is not None:
            value, t0, t1 = self.incoming
            frac = (scene.tick - t0) / max(t1 - t0, 1)
            y_target = h - 4 - slot_h * (min(len(shown), self.VISIBLE_SLOTS - 1) + 1)
            y = interpolate(-h - 10, y_target, frac)
            cmds.append(Text(text=value_to_text(value), anchor=Point2(0, y + 3), size=9, color=SELECTED))
        if self.outgoing is not None:
            value, t0, t1 = self.outgoing
            frac = (scene.tick - t0) / max(t1 - t0, 1)
            y_start = h - 4 - slot_h * (min(len(shown), self.VISIBLE_SLOTS - 1) + 1)
            y = interpolate(y_start, -h - 10, frac)
            cmds.append(Text(text=value_to_text(value), anchor=Point2(0, y + 3), size=9, color=SELECTED))
        if self.is_flashing(scene):
            cmds.append(Oval(center=Point2(0, 0), rx=h, ry=h, color=ERROR, filled=False))
        return cmds
