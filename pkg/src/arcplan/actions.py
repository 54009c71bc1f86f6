"""Preconditions and effects of the action schemes over an abstract state.

Every scheme is implemented as a *planner*: given the state and bound
arguments it returns None when the precondition fails, or a commit callable
that performs the effect. The commit may still raise :class:`ActionFailed`
(e.g. a translation that would leave the image); callers treat both cases
as a no-op.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

import numpy as np

from .abstraction import (
    AXIS_DIRECTIONS,
    DELTAS,
    M_DIRECTIONS,
    OPPOSITE,
    AbstractGraph,
    Node,
    NodeFlags,
    Pixel,
    Shape,
    compute_flags,
    flag_set,
    congruent,
    contains,
    partially_contains,
    relative_position,
    same_color,
    spatial_directions,
)
from .arc_io import Grid
from .domain import SCHEMES, UNARY_FLAG_PREDICATES, ActionSchemeDef


class ActionFailed(Exception):
    pass


@dataclass(frozen=True)
class GroundAction:
    scheme: ActionSchemeDef
    args: tuple

    def __post_init__(self):
        if len(self.args) != len(self.scheme.params):
            raise ValueError(f"{self.scheme.name} takes {len(self.scheme.params)} arguments, got {len(self.args)}")


class AbstractState:
    """Nodes plus a rendered grid kept in sync incrementally.

    Node ids index ``nodes`` and never change, so pointers bound to nodes stay
    valid across effects. Overlaps render by recency: a node modified later
    paints over earlier ones.
    """

    __slots__ = ("kind", "background", "dims", "nodes", "z", "rendered", "_clock", "_cover", "_flags", "denoise", "denoise_color")

    def __init__(self, kind, background: int, dims: tuple[int, int], nodes: Sequence[Node], denoise=frozenset(), denoise_color=None):
        self.kind = kind
        self.background = background
        self.dims = dims
        self.nodes = list(nodes)
        self.z = list(range(len(self.nodes)))
        self._clock = len(self.nodes)
        self.denoise = denoise
        self.denoise_color = dict(denoise_color or {})
        self.rendered = self.render_full()
        self._cover = None
        self._flags = None

    @classmethod
    def from_graph(cls, graph: AbstractGraph) -> "AbstractState":
        return cls(graph.kind, graph.background, graph.grid_dims, graph.nodes, graph.flags.denoise, graph.flags.denoise_color)

    def clone(self) -> "AbstractState":
        s = object.__new__(AbstractState)
        s.kind = self.kind
        s.background = self.background
        s.dims = self.dims
        s.nodes = list(self.nodes)
        s.z = list(self.z)
        s._clock = self._clock
        s.denoise = self.denoise
        s.denoise_color = self.denoise_color
        s.rendered = self.rendered.copy()
        s._cover = self._cover
        s._flags = self._flags
        return s

    # -- views

    @property
    def grid(self) -> Grid:
        return Grid(self.rendered)

    @property
    def graph(self) -> AbstractGraph:
        return AbstractGraph(self.kind, self.background, self.nodes, self.dims, self.denoise, self.denoise_color)

    def node(self, nid: Any) -> Optional[Node]:
        if not isinstance(nid, int) or not 0 <= nid < len(self.nodes):
            return None
        n = self.nodes[nid]
        return n if n.active else None

    def render_full(self) -> np.ndarray:
        out = np.full(self.dims, self.background, dtype=np.int8)
        for i in sorted(range(len(self.nodes)), key=self.z.__getitem__):
            n = self.nodes[i]
            if n.active:
                for p in n.pixels:
                    out[p] = n.color_at(p)
        return out

    @property
    def cover(self) -> dict[Pixel, list[int]]:
        """pixel -> ids of active nodes covering it."""
        if self._cover is None:
            cov: dict[Pixel, list[int]] = {}
            for n in self.nodes:
                if n.active:
                    for p in n.pixels:
                        cov.setdefault(p, []).append(n.id)
            self._cover = cov
        return self._cover

    @property
    def flags(self) -> NodeFlags:
        return compute_flags(self.nodes, self.dims, self.background, self.denoise, self.denoise_color)

    def flag(self, attr: str) -> frozenset[int]:
        if self._flags is None:
            self._flags = {}
        got = self._flags.get(attr)
        if got is None:
            got = self._flags[attr] = flag_set(self.nodes, self.dims, self.background, attr)
        return got

    def in_bounds(self, pixels) -> bool:
        h, w = self.dims
        return all(0 <= r < h and 0 <= c < w for r, c in pixels)

    def collides(self, pixels, ignore: Sequence[int]) -> bool:
        for n in self.nodes:
            if n.active and n.id not in ignore and not n.pixels.isdisjoint(pixels):
                return True
        return False

    # -- mutation

    def commit(self, new: Node) -> None:
        old = self.nodes[new.id]
        if new == old:
            return
        self.nodes[new.id] = new
        self.z[new.id] = self._clock
        self._clock += 1
        self._cover = None
        self._flags = None
        out = self.rendered
        if new.active:
            if new.size > 8:
                cells = new.cells()
                rows, cols = zip(*cells)
                out[rows, cols] = list(cells.values())
            else:
                for p in new.pixels:
                    out[p] = new.color_at(p)
            vacated = old.pixels - new.pixels
        else:
            vacated = old.pixels
        if vacated:
            for p in vacated:
                best, color = -1, self.background
                for n in self.nodes:
                    if n.active and p in n.pixels and self.z[n.id] > best:
                        best, color = self.z[n.id], n.color_at(p)
                out[p] = color


Planner = Callable[[AbstractState, tuple], Optional[Callable[[], None]]]


def _shift(node: Node, dr: int, dc: int) -> Node:
    if node.color is not None:
        return Node(node.id, frozenset((r + dr, c + dc) for r, c in node.pixels), color=node.color)
    return Node(node.id, [(r + dr, c + dc) for r, c in node.pixels], colormap={(r + dr, c + dc): v for (r, c), v in node.colormap.items()})


def _rebuild(node: Node, cells: dict) -> Node:
    return node.with_cells(cells, multicolor=node.color is None)


def _witness(state: AbstractState, a: Node, b: Node) -> Optional[str]:
    dirs = spatial_directions(a, b, state.cover)
    for d in M_DIRECTIONS:
        if d in dirs:
            return d
    return None


def _adjacent(pixels, target: frozenset, diagonal: bool) -> bool:
    if diagonal:
        deltas = [(dr, dc) for dr in (-1, 0, 1) for dc in (-1, 0, 1) if dr or dc]
    else:
        deltas = [(-1, 0), (1, 0), (0, -1), (0, 1)]
    return any((r + dr, c + dc) in target for r, c in pixels for dr, dc in deltas)


def _contact_distance(state: AbstractState, a: Node, b: Node, d: str) -> int:
    """Steps moving ``a`` along ``d`` until it touches ``b``."""
    dr, dc = DELTAS[d]
    diagonal = d not in AXIS_DIRECTIONS
    h, w = state.dims
    for k in range(h + w + 1):
        moved = [(r + k * dr, c + k * dc) for r, c in a.pixels]
        if not state.in_bounds(moved):
            raise ActionFailed("node leaves the image before reaching its target")
        if _adjacent(moved, b.pixels, diagonal):
            return k
    raise ActionFailed("target never reached")


def _free_distance(state: AbstractState, a: Node, d: str) -> int:
    """Steps ``a`` can move along ``d`` before hitting a node or the boundary."""
    dr, dc = DELTAS[d]
    k = 0
    while True:
        moved = [(r + (k + 1) * dr, c + (k + 1) * dc) for r, c in a.pixels]
        if not state.in_bounds(moved) or state.collides(moved, (a.id,)):
            return k
        k += 1


def _projection(node: Node, d: str) -> int:
    dr, dc = DELTAS[d]
    return max(r * dr + c * dc for r, c in node.pixels)


def _slide(state: AbstractState, nid: int, d: str) -> None:
    n = state.nodes[nid]
    k = _free_distance(state, n, d)
    if k:
        dr, dc = DELTAS[d]
        state.commit(_shift(n, k * dr, k * dc))


def _sweep(state: AbstractState, n: Node, d: str) -> set:
    dr, dc = DELTAS[d]
    h, w = state.dims
    out = set()
    for k in range(1, h + w + 1):
        moved = [(r + k * dr, c + k * dc) for r, c in n.pixels]
        inside = [p for p in moved if 0 <= p[0] < h and 0 <= p[1] < w]
        if not inside:
            break
        out.update(inside)
    return out


def _push(state: AbstractState, nid: int, d: str, done: set) -> None:
    done.add(nid)
    n = state.nodes[nid]
    swept = _sweep(state, n, d)
    blockers = {i for p in swept for i in state.cover.get(p, ()) if i not in done}
    for b in sorted(blockers, key=lambda i: (-_projection(state.nodes[i], d), i)):
        if b not in done:
            _push(state, b, d, done)
    _slide(state, nid, d)


# ---------------------------------------------------------------- schemes


def _update_color(s: AbstractState, args):
    nid, c1, c2 = args
    n = s.node(nid)
    if n is None or n.color != c1:
        return None
    return lambda: s.commit(n.with_color(c2))


def _copy_color(s, args):
    a, b = s.node(args[0]), s.node(args[1])
    if a is None or b is None or a.id == b.id:
        return None

    def run():
        if a.color is None:
            raise ActionFailed("source node has no single color")
        s.commit(b.with_color(a.color))

    return run


def _swap_color(s, args):
    a, b = s.node(args[0]), s.node(args[1])
    if a is None or b is None or a.id == b.id:
        return None

    def run():
        if a.color is None or b.color is None:
            raise ActionFailed("swap needs single-colored nodes")
        s.commit(a.with_color(b.color))
        s.commit(b.with_color(a.color))

    return run


def _related(s, args):
    a, b = s.node(args[0]), s.node(args[1])
    if a is None or b is None or a.id == b.id:
        return None
    d = _witness(s, a, b)
    if d is None:
        return None
    return a, b, OPPOSITE[d]


def _move_node1(s, args):
    rel = _related(s, args)
    if rel is None:
        return None
    a, b, m = rel

    def run():
        k = _contact_distance(s, a, b, m)
        dr, dc = DELTAS[m]
        s.commit(_shift(a, k * dr, k * dc))

    return run


def _move_node2(s, args):
    rel = _related(s, args)
    if rel is None:
        return None
    a, b, m = rel
    d = OPPOSITE[m]

    def run():
        between = []
        for x in s.nodes:
            if not x.active or x.id in (a.id, b.id):
                continue
            if d in spatial_directions(a, x, s.cover) and d in spatial_directions(x, b, s.cover):
                between.append(x.id)
        for i in sorted(between, key=lambda i: (-_projection(s.nodes[i], m), i)):
            _slide(s, i, m)
        _slide(s, a.id, m)

    return run


def _move_direction1(s, args):
    n = s.node(args[0])
    if n is None:
        return None
    return lambda: _push(s, n.id, args[1], set())


def _move_direction2(s, args):
    n = s.node(args[0])
    if n is None:
        return None
    d, step = args[1], args[2]

    def run():
        dr, dc = DELTAS[d]
        if step == "one":
            moved = _shift(n, dr, dc)
            if not s.in_bounds(moved.pixels) or s.collides(moved.pixels, (n.id,)):
                raise ActionFailed("no free cell in that direction")
            s.commit(moved)
        else:
            _slide(s, n.id, d)

    return run


def _extend(s: AbstractState, n: Node, d: str, k: int) -> Node:
    dr, dc = DELTAS[d]
    cells = {}
    for j in range(k, -1, -1):
        for (r, c), v in n.cells().items():
            cells[(r + j * dr, c + j * dc)] = v
    return _rebuild(n, cells)


def _extend_node(s, args):
    rel = _related(s, args)
    if rel is None:
        return None
    a, b, m = rel

    def run():
        k = _contact_distance(s, a, b, m)
        s.commit(_extend(s, a, m, k))

    return run


def _extend_direction(s, args):
    n = s.node(args[0])
    if n is None:
        return None
    return lambda: s.commit(_extend(s, n, args[1], _free_distance(s, n, args[1])))


def _fits(s: AbstractState, result: Node, ignore: Sequence[int]):
    r0, c0, r1, c1 = result.bbox
    h, w = s.dims
    if r0 < 0 or c0 < 0 or r1 >= h or c1 >= w or s.collides(result.pixels, ignore):
        return None
    return lambda: s.commit(result)


def _rotate(s, args):
    n = s.node(args[0])
    if n is None:
        return None
    h, w = s.dims
    deg = args[1]
    if n.size != h * w or (deg in (90, 270) and h != w):
        return None
    arr = np.empty((h, w), dtype=np.int64)
    for (r, c), v in n.cells().items():
        arr[r, c] = v
    rot = np.rot90(arr, k=-(deg // 90))  # clockwise
    cells = {(r, c): int(rot[r, c]) for r in range(h) for c in range(w)}
    return _fits(s, _rebuild(n, cells), (n.id,))


def _hollow(s, args):
    n = s.node(args[0])
    if n is None or n.shape not in (Shape.SQUARE, Shape.RECTANGLE):
        return None
    c = args[1]
    r0, c0, r1, c1 = n.bbox
    interior = [(r, cc) for r in range(r0 + 1, r1) for cc in range(c0 + 1, c1)]
    if not interior:
        return lambda: None
    cells = n.cells()
    if c == s.background:
        for p in interior:
            del cells[p]
    else:
        for p in interior:
            cells[p] = c
    return lambda: s.commit(_rebuild(n, cells))


def _add_border(s, args):
    n = s.node(args[0])
    if n is None:
        return None
    ring = {(r + dr, c + dc) for r, c in n.pixels for dr in (-1, 0, 1) for dc in (-1, 0, 1)} - n.pixels
    cells = n.cells()
    cells.update(dict.fromkeys(ring, args[1]))
    result = _rebuild(n, cells)
    if not s.in_bounds(ring) or s.collides(ring, (n.id,)):
        return None
    return lambda: s.commit(result)


def _mirror(s, args):
    a, b = s.node(args[0]), s.node(args[1])
    if a is None or b is None or a.id == b.id:
        return None
    ar0, ac0, ar1, ac1 = a.bbox
    br0, bc0, br1, bc1 = b.bbox
    dr = (ar0 + ar1) - (br0 + br1)
    dc = (ac0 + ac1) - (bc0 + bc1)
    if abs(dc) >= abs(dr):
        cells = {(r, bc0 + bc1 - c): v for (r, c), v in a.cells().items()}
    else:
        cells = {(br0 + br1 - r, c): v for (r, c), v in a.cells().items()}
    return _fits(s, _rebuild(a, cells), (a.id,))


def flip_cells(node: Node, axis: str) -> dict:
    r0, c0, r1, c1 = node.bbox
    cells = node.cells().items()
    if axis == "vertical":
        return {(r, c0 + c1 - c): v for (r, c), v in cells}
    if axis == "horizontal":
        return {(r0 + r1 - r, c): v for (r, c), v in cells}
    if axis == "right-diagonal":
        return {(r0 + c - c0, c0 + r - r0): v for (r, c), v in cells}
    if axis == "left-diagonal":
        return {(r0 + c1 - c, c0 + r1 - r): v for (r, c), v in cells}
    raise ValueError(axis)


def _flip(s, args):
    n = s.node(args[0])
    if n is None:
        return None
    return _fits(s, _rebuild(n, flip_cells(n, args[1])), (n.id,))


def _insert(s, args):
    a, b = s.node(args[0]), s.node(args[1])
    if a is None or b is None or a.id == b.id:
        return None
    ar0, ac0, _, _ = a.bbox
    br0, bc0, _, _ = b.bbox
    cells = {(r - ar0 + br0, c - ac0 + bc0): v for (r, c), v in a.cells().items()}
    result = Node.from_cells(b.id, cells, multicolor=a.color is None)
    return _fits(s, result, (b.id,))


def _fill(s, args):
    n = s.node(args[0])
    if n is None or n.shape is not Shape.UNKNOWN:
        return None
    r0, c0, r1, c1 = n.bbox
    cells = {(r, c): args[1] for r in range(r0, r1 + 1) for c in range(c0, c1 + 1)}
    cells.update(n.cells())
    return _fits(s, _rebuild(n, cells), (n.id,))


PLANNERS: dict[str, Planner] = {
    "UpdateColor": _update_color,
    "CopyColor": _copy_color,
    "SwapColor": _swap_color,
    "MoveNode1": _move_node1,
    "MoveNode2": _move_node2,
    "MoveNodeDirection1": _move_direction1,
    "MoveNodeDirection2": _move_direction2,
    "ExtendNode": _extend_node,
    "ExtendNodeDirection": _extend_direction,
    "RotateNode": _rotate,
    "HollowNode": _hollow,
    "AddBorder": _add_border,
    "MirrorNode": _mirror,
    "FlipNode": _flip,
    "InsertNode": _insert,
    "FillNode": _fill,
}
assert set(PLANNERS) == set(SCHEMES)


def applicable(state: AbstractState, action: GroundAction) -> bool:
    return PLANNERS[action.scheme.name](state, tuple(action.args)) is not None


def apply(state: AbstractState, action: GroundAction) -> AbstractState:
    """Apply in place and return the state. Raises ActionFailed when the
    precondition does not hold or the effect cannot be realized."""
    run = PLANNERS[action.scheme.name](state, tuple(action.args))
    if run is None:
        raise ActionFailed(f"{action.scheme.name} not applicable")
    run()
    return state


def execute(state: AbstractState, scheme: str, args: tuple) -> bool:
    """Apply if possible, else leave the state alone. Effects raise
    ActionFailed before their first commit, so no rollback is needed."""
    run = PLANNERS[scheme](state, args)
    if run is None:
        return False
    try:
        run()
    except ActionFailed:
        return False
    return True


# ---------------------------------------------------------------- predicates


def _flag(attr):
    def ev(s, args):
        n = s.node(args[0])
        return n is not None and n.id in s.flag(attr)

    return ev


def _pair(fn):
    def ev(s, args):
        a, b = s.node(args[0]), s.node(args[1])
        if a is None or b is None or a.id == b.id:
            return False
        return fn(s, a, b, *args[2:])

    return ev


def _pixel_color(s, args):
    (r, c), color = args
    h, w = s.dims
    return 0 <= r < h and 0 <= c < w and int(s.rendered[r, c]) == color


def _contain_pixel(s, args):
    n = s.node(args[0])
    return n is not None and tuple(args[1]) in n.pixels


def _denoising(s, args):
    n = s.node(args[0])
    return n is not None and n.id in s.denoise and s.denoise_color.get(n.id) == args[1]


PREDICATE_EVAL: dict[str, Callable[[AbstractState, tuple], bool]] = {
    **{name: _flag(attr) for name, attr in UNARY_FLAG_PREDICATES.items()},
    "true": lambda s, args: True,
    "color-most": lambda s, args: args[0] in s.flag("color_most"),
    "color-least": lambda s, args: args[0] in s.flag("color_least"),
    "background": lambda s, args: args[0] == s.background,
    "node-color": lambda s, args: (n := s.node(args[0])) is not None and n.color is not None and n.color == args[1],
    "node-size": lambda s, args: (n := s.node(args[0])) is not None and n.size == args[1],
    "node-shape": lambda s, args: (n := s.node(args[0])) is not None and n.shape.value == str(args[1]),
    "denoising-color": _denoising,
    "pixel-color": _pixel_color,
    "contain-pixel": _contain_pixel,
    "node-spatial": _pair(lambda s, a, b, d: d in spatial_directions(a, b, s.cover)),
    "node-diagonal": _pair(lambda s, a, b: any(d not in AXIS_DIRECTIONS for d in spatial_directions(a, b, s.cover))),
    "same-color": _pair(lambda s, a, b: same_color(a, b)),
    "congruent": _pair(lambda s, a, b: congruent(a, b)),
    "contain-node": _pair(lambda s, a, b: contains(a, b)),
    "partially-contain-node": _pair(lambda s, a, b: partially_contains(a, b, s.dims)),
    "relative-position": _pair(lambda s, a, b, d: relative_position(a, b) == d),
}


def evaluate_predicate(state: AbstractState, predicate: str, args: Sequence) -> bool:
    return bool(PREDICATE_EVAL[predicate](state, tuple(args)))
