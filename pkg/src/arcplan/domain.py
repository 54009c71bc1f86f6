"""Per-task planning domain: objects, predicates, action schemes.

A domain is generated for one (task, abstraction) pair. Action schemes that
the training pairs show to be irrelevant are pruned up front, and the
predicates a ``test`` instruction may interpret are restricted to those that
can actually discriminate nodes across every input image.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from .abstraction import (
    M_DIRECTIONS,
    NO_RELATIONS,
    SHAPES,
    AbstractGraph,
    AbstractionKind,
    Shape,
    abstract,
    congruent,
    contains,
    occupancy,
    partially_contains,
    relative_position,
    same_color,
    spatial_directions,
)
from .arc_io import Grid, Task

K = AbstractionKind


class EmptyDomain(Exception):
    """Every action scheme was pruned for this (task, abstraction)."""


class ObjType(str, Enum):
    NODE = "node"
    PIXEL = "pixel"
    COLOR = "color"
    SIZE = "size"
    STEP = "step"
    ROTATION = "rotation"
    F_DIRECTION = "f-direction"
    M_DIRECTION = "m-direction"
    SHAPE = "shape"

    def __str__(self) -> str:
        return self.value


T = ObjType

STEPS = ("one", "max")
ROTATIONS = (90, 180, 270)
F_DIRECTIONS = ("vertical", "horizontal", "left-diagonal", "right-diagonal")
SHAPE_NAMES = tuple(s.value for s in SHAPES)

FIXED_OBJECTS = {
    T.STEP: STEPS,
    T.ROTATION: ROTATIONS,
    T.F_DIRECTION: F_DIRECTIONS,
    T.M_DIRECTION: M_DIRECTIONS,
    T.SHAPE: SHAPE_NAMES,
}


def object_name(t: ObjType, value: Any) -> str:
    if t is T.NODE:
        return f"node-{value}"
    if t is T.PIXEL:
        return f"pixel-{value[0]}-{value[1]}"
    if t is T.COLOR:
        return f"color-{value}"
    if t is T.SIZE:
        return f"size-{value}"
    if t is T.ROTATION:
        return f"deg-{value}"
    return str(value)


def parse_object_name(t: ObjType, name: str) -> Any:
    """Inverse of :func:`object_name`."""
    if t is T.NODE:
        return int(name.removeprefix("node-"))
    if t is T.PIXEL:
        _, r, c = name.split("-")
        return (int(r), int(c))
    if t is T.COLOR:
        return int(name.removeprefix("color-"))
    if t is T.SIZE:
        return int(name.removeprefix("size-"))
    if t is T.ROTATION:
        return int(name.removeprefix("deg-"))
    if name not in FIXED_OBJECTS[t]:
        raise ValueError(f"{name!r} is not a {t.value} object")
    return name


@dataclass(frozen=True)
class ObjectUniverse:
    objects: dict  # ObjType -> tuple of values

    def __getitem__(self, t: ObjType) -> tuple:
        return self.objects.get(t, ())

    def names(self) -> dict[ObjType, list[str]]:
        return {t: [object_name(t, v) for v in vals] for t, vals in self.objects.items()}


@dataclass(frozen=True)
class PredicateDef:
    name: str
    params: tuple[ObjType, ...]
    test_eligible: bool


@dataclass(frozen=True)
class ActionSchemeDef:
    name: str
    params: tuple[ObjType, ...]
    precondition: str  # external function name, or "" when there is none
    effect: str


def _preds() -> dict[str, PredicateDef]:
    unary_node = [
        "color-max", "color-min", "size-min", "size-max", "odd", "even",
        "up-border", "down-border", "left-border", "right-border",
        "left-diagonal", "right-diagonal", "horizontal-middle", "vertical-middle",
    ]
    defs = [
        PredicateDef("color-most", (T.COLOR,), True),
        PredicateDef("color-least", (T.COLOR,), True),
        *[PredicateDef(n, (T.NODE,), True) for n in unary_node],
        PredicateDef("node-color", (T.NODE, T.COLOR), True),
        PredicateDef("node-shape", (T.NODE, T.SHAPE), True),
        PredicateDef("node-size", (T.NODE, T.SIZE), True),
        PredicateDef("denoising-color", (T.NODE, T.COLOR), True),
        PredicateDef("background", (T.COLOR,), False),
        PredicateDef("node-diagonal", (T.NODE, T.NODE), True),
        PredicateDef("same-color", (T.NODE, T.NODE), True),
        PredicateDef("congruent", (T.NODE, T.NODE), True),
        PredicateDef("contain-node", (T.NODE, T.NODE), True),
        PredicateDef("partially-contain-node", (T.NODE, T.NODE), True),
        PredicateDef("relative-position", (T.NODE, T.NODE, T.M_DIRECTION), True),
        PredicateDef("node-spatial", (T.NODE, T.NODE, T.M_DIRECTION), False),
        PredicateDef("pixel-color", (T.PIXEL, T.COLOR), False),
        PredicateDef("contain-pixel", (T.NODE, T.PIXEL), False),
    ]
    return {p.name: p for p in defs}


PREDICATES = _preds()

UNARY_FLAG_PREDICATES = {
    "color-max": "color_max",
    "color-min": "color_min",
    "size-min": "size_min",
    "size-max": "size_max",
    "odd": "odd",
    "even": "even",
    "up-border": "up_border",
    "down-border": "down_border",
    "left-border": "left_border",
    "right-border": "right_border",
    "left-diagonal": "left_diagonal",
    "right-diagonal": "right_diagonal",
    "horizontal-middle": "horizontal_middle",
    "vertical-middle": "vertical_middle",
}
RELATION_PREDICATES = (
    "node-diagonal", "same-color", "congruent", "contain-node", "partially-contain-node",
    "relative-position", "node-spatial",
)


def _schemes() -> dict[str, ActionSchemeDef]:
    n, c = T.NODE, T.COLOR
    rows = [
        ("UpdateColor", (n, c, c), "", "@update-color"),
        ("CopyColor", (n, n), "@distinct-nodes", "@copy-color"),
        ("SwapColor", (n, n), "@distinct-nodes", "@swap-color"),
        ("MoveNode1", (n, n), "@has-spatial-relation", "@move-node-to-border"),
        ("MoveNode2", (n, n), "@has-spatial-relation", "@move-nodes-between-to-border"),
        ("MoveNodeDirection1", (n, T.M_DIRECTION), "", "@push-nodes-to-boundary"),
        ("MoveNodeDirection2", (n, T.M_DIRECTION, T.STEP), "", "@move-node-direction"),
        ("ExtendNode", (n, n), "@has-spatial-relation", "@extend-node-to-node"),
        ("ExtendNodeDirection", (n, T.M_DIRECTION), "", "@extend-node-direction"),
        ("RotateNode", (n, T.ROTATION), "@fits-rotated", "@rotate-node"),
        ("HollowNode", (n, c), "@is-square-or-rectangle", "@hollow-node"),
        ("AddBorder", (n, c), "@fits-bordered", "@add-border"),
        ("MirrorNode", (n, n), "@fits-mirrored", "@mirror-node"),
        ("FlipNode", (n, T.F_DIRECTION), "@fits-flipped", "@flip-node"),
        ("InsertNode", (n, n), "@fits-inserted", "@insert-node"),
        ("FillNode", (n, c), "@fits-filled", "@fill-node"),
    ]
    return {name: ActionSchemeDef(name, params, pre, eff) for name, params, pre, eff in rows}


SCHEMES = _schemes()

_CC4_PREDS = (
    "node-color", "node-size", "node-shape", "contain-node", "partially-contain-node",
    "node-spatial", "node-diagonal", "odd", "even", "size-max", "size-min", "color-max",
    "color-min", "background", "contain-pixel", "pixel-color",
)
_CC4_SCHEMES = (
    "UpdateColor", "MoveNode1", "ExtendNode", "AddBorder", "MirrorNode", "InsertNode",
    "HollowNode", "FillNode",
)
_SPA_PREDS = (
    "node-color", "node-size", "node-shape", "contain-node", "partially-contain-node",
    "node-spatial", "relative-position", "node-diagonal", "background", "contain-pixel",
    "pixel-color",
)
_SPA_SCHEMES = ("UpdateColor", "MoveNode2", "MoveNodeDirection1", "MoveNodeDirection2", "ExtendNodeDirection")
_CON_PREDS = (
    "node-color", "node-size", "contain-node", "partially-contain-node", "node-spatial",
    "same-color", "congruent", "color-max", "color-min", "background", "contain-pixel",
    "pixel-color",
)
_CON_SCHEMES = ("UpdateColor", "SwapColor", "CopyColor")
_MC_PREDS = (
    "node-size", "node-shape", "contain-node", "partially-contain-node", "node-spatial",
    "node-diagonal", "size-max", "size-min", "even", "odd", "background", "contain-pixel",
    "pixel-color",
)
_MC_SCHEMES = ("MoveNode1", "ExtendNode", "AddBorder", "MirrorNode", "InsertNode", "HollowNode", "FillNode")
_PIXEL_PREDS = (
    "node-color", "background", "color-most", "color-least", "denoising-color",
    "right-diagonal", "left-diagonal", "up-border", "down-border", "left-border",
    "right-border", "vertical-middle", "horizontal-middle", "contain-pixel", "pixel-color",
)
_IMAGE_PREDS = ("contain-pixel", "pixel-color")

CATALOG = {
    K.CC4: (_CC4_PREDS, _CC4_SCHEMES),
    K.CC8: (_CC4_PREDS, _CC4_SCHEMES),
    K.CC4_B: (_CC4_PREDS, _CC4_SCHEMES),
    K.CC8_B: (_CC4_PREDS, _CC4_SCHEMES),
    K.CC4_ALL: (_CC4_PREDS, _CC4_SCHEMES),
    K.CC8_ALL: (_CC4_PREDS, _CC4_SCHEMES),
    K.CC4_SPA: (_SPA_PREDS, _SPA_SCHEMES),
    K.CC8_SPA: (_SPA_PREDS, _SPA_SCHEMES),
    K.CC4_CON: (_CON_PREDS, _CON_SCHEMES),
    K.CC8_CON: (_CON_PREDS, _CON_SCHEMES),
    K.MULTI_COLOR_4: (_MC_PREDS, _MC_SCHEMES),
    K.MULTI_COLOR_8: (_MC_PREDS, _MC_SCHEMES),
    K.MAX_RECT: (_CC4_PREDS, _CC4_SCHEMES),
    K.BG_RECT: (_CC4_PREDS, ("UpdateColor",)),
    K.SAME_COLOR: (_CC4_PREDS, ("UpdateColor", "SwapColor", "CopyColor")),
    K.PIXELS: (_PIXEL_PREDS, ("UpdateColor",)),
    K.IMAGE: (_IMAGE_PREDS, ("RotateNode", "FlipNode")),
    K.HORIZONTAL: (_CC4_PREDS, _CC4_SCHEMES),
    K.VERTICAL: (_CC4_PREDS, _CC4_SCHEMES),
}


def catalog_for(kind: AbstractionKind) -> tuple[list[PredicateDef], list[ActionSchemeDef]]:
    preds, schemes = CATALOG[AbstractionKind(kind)]
    return [PREDICATES[p] for p in preds], [SCHEMES[s] for s in schemes]


# ---------------------------------------------------------------- pruning

PRUNE_TABLE = {
    "positionUnchanged": (
        "MoveNodeDirection1", "MoveNodeDirection2", "MoveNode1", "MoveNode2",
        "ExtendNodeDirection", "ExtendNode", "AddBorder", "InsertNode", "FillNode",
        "MirrorNode", "RotateNode", "FlipNode",
    ),
    "colorUnchanged": ("UpdateColor",),
    "sizeUnchanged": ("InsertNode", "ExtendNode", "ExtendNodeDirection", "AddBorder", "FillNode", "HollowNode"),
    "fillConstraint": ("FillNode",),
    "hollowConstraint": ("HollowNode",),
    "insertConstraint": ("InsertNode",),
}


def _position_unchanged(inp: Grid, out: Grid, bg: int) -> bool:
    if inp.shape != out.shape:
        return False
    return not bool(np.any((out.cells != bg) & (inp.cells == bg)))


def _color_unchanged(g_in: AbstractGraph, out: Grid, g_out: AbstractGraph, moved: bool) -> bool:
    bg = g_in.background
    if g_in.grid_dims != out.shape:
        return False
    out_sigs = {n.signature() for n in g_out.nodes}
    cells = out.cells
    for n in g_in.nodes:
        if n.color is None:
            continue
        vals = {int(cells[p]) for p in n.pixels}
        if vals == {n.color} or len(vals) > 1:
            continue
        (v,) = vals
        if v != bg:
            return False
        # the node's pixels all became background: deleted or moved away
        if not moved or n.signature() not in out_sigs:
            return False
    return True


def _size_unchanged(g_in: AbstractGraph, g_out: AbstractGraph) -> bool:
    in_sigs = {n.signature() for n in g_in.nodes}
    for o in g_out.nodes:
        overlap = [n for n in g_in.nodes if n.pixels & o.pixels]
        if any(n.size != o.size for n in overlap):
            return False
        if not overlap and o.signature() not in in_sigs:
            return False
    return True


def fired_constraints(task: Task, in_graphs: Sequence[AbstractGraph], out_graphs: Sequence[AbstractGraph]) -> list[str]:
    """Names of the pruning constraints whose conditions hold on the training set."""
    fired = []
    pos = [
        _position_unchanged(p.input, p.output, g.background)
        for p, g in zip(task.train, in_graphs)
    ]
    if all(pos):
        fired.append("positionUnchanged")
    if all(
        _color_unchanged(gi, p.output, go, moved=not ok)
        for p, gi, go, ok in zip(task.train, in_graphs, out_graphs, pos)
    ):
        fired.append("colorUnchanged")
    if all(_size_unchanged(gi, go) for gi, go in zip(in_graphs, out_graphs)):
        fired.append("sizeUnchanged")
    in_shapes = {n.shape for g in in_graphs for n in g.nodes}
    if Shape.UNKNOWN not in in_shapes:
        fired.append("fillConstraint")
    if not in_shapes & {Shape.SQUARE, Shape.RECTANGLE}:
        fired.append("hollowConstraint")
    common = None
    for g in in_graphs:
        sigs = {n.signature() for n in g.nodes}
        common = sigs if common is None else common & sigs
    if not common:
        fired.append("insertConstraint")
    return fired


def prune_actions(
    task: Task,
    in_graphs: Sequence[AbstractGraph],
    out_graphs: Sequence[AbstractGraph],
    schemes: Sequence[ActionSchemeDef],
) -> list[ActionSchemeDef]:
    pruned = set()
    for name in fired_constraints(task, in_graphs, out_graphs):
        pruned.update(PRUNE_TABLE[name])
    return [s for s in schemes if s.name not in pruned]


# ---------------------------------------------------------------- test whitelist


@dataclass(frozen=True)
class TestPattern:
    """A predicate a test may interpret, with the constants allowed per slot.

    Pointers of the slot's type are always allowed; NODE slots take pointers
    only since node objects are instance-specific.
    """

    predicate: str
    constants: tuple[tuple, ...]


def _attr_values(g: AbstractGraph, pred: str) -> list:
    f = g.flags
    if pred in UNARY_FLAG_PREDICATES:
        s = getattr(f, UNARY_FLAG_PREDICATES[pred])
        return [n.id in s for n in g.nodes]
    if pred == "node-color":
        return [n.color for n in g.nodes if n.color is not None]
    if pred == "node-size":
        return [n.size for n in g.nodes]
    if pred == "node-shape":
        return [n.shape.value for n in g.nodes]
    if pred == "denoising-color":
        return [n.id in f.denoise for n in g.nodes]
    raise KeyError(pred)


def _relation_truths(g: AbstractGraph, pred: str) -> tuple[bool, bool]:
    """(holds for some ordered pair, fails for some ordered pair)."""
    nodes = [n for n in g.nodes if n.active]
    if len(nodes) < 2 or g.kind in NO_RELATIONS:
        return (False, False)
    r = g.relations
    pairs = len(nodes) * (len(nodes) - 1)
    table = {
        "node-diagonal": r.diagonal,
        "same-color": r.same_color,
        "congruent": r.congruent,
        "contain-node": r.contains,
        "partially-contain-node": r.partially_contains,
    }
    if pred == "relative-position":
        held = {(a, b) for a, b, _ in r.relative_position}
        return (bool(held), True)
    held = table[pred]
    return (bool(held), len(held) < pairs)


def predicate_constraints(
    task: Task, input_graphs: Sequence[AbstractGraph], predicates: Sequence[PredicateDef]
) -> list[TestPattern]:
    """Test patterns over train AND test input graphs; see module docstring."""
    node_colors = [{n.color for n in g.nodes if n.color is not None} for g in input_graphs]
    sizes = [{n.size for n in g.nodes} for g in input_graphs]
    colors_everywhere = sorted(set.intersection(*node_colors)) if node_colors else []
    sizes_everywhere = sorted(set.intersection(*sizes)) if sizes else []
    shapes_anywhere = [s.value for s in SHAPES if any(n.shape is s for g in input_graphs for n in g.nodes)]
    out = []
    for p in predicates:
        if not p.test_eligible:
            continue
        name = p.name
        if name in ("color-most", "color-least"):
            all_colors = set().union(*node_colors) if node_colors else set()
            if len(all_colors) >= 2:
                out.append(TestPattern(name, (tuple(colors_everywhere),)))
            continue
        if name in RELATION_PREDICATES:
            truths = [_relation_truths(g, name) for g in input_graphs]
            if any(t for t, _ in truths) and any(f for _, f in truths):
                if name == "relative-position":
                    dirs = {d for g in input_graphs if g.kind not in NO_RELATIONS for _, _, d in g.relations.relative_position}
                    consts = tuple(d for d in M_DIRECTIONS if d in dirs)
                    out.append(TestPattern(name, ((), (), consts)))
                else:
                    out.append(TestPattern(name, ((), ())))
            continue
        values = set()
        for g in input_graphs:
            values.update(_attr_values(g, name))
        if len(values) < 2:
            continue
        if name == "node-color":
            out.append(TestPattern(name, ((), tuple(colors_everywhere))))
        elif name == "node-size":
            out.append(TestPattern(name, ((), tuple(sizes_everywhere))))
        elif name == "node-shape":
            out.append(TestPattern(name, ((), tuple(shapes_anywhere))))
        elif name == "denoising-color":
            out.append(TestPattern(name, ((), tuple(colors_everywhere))))
        else:
            out.append(TestPattern(name, ((),)))
    return out


# ---------------------------------------------------------------- model


@dataclass(frozen=True)
class InstanceDescription:
    name: str
    graph: AbstractGraph  # abstraction of the input grid
    universe: ObjectUniverse
    input: Grid
    goal: Optional[Grid]


@dataclass(frozen=True)
class DomainModel:
    task_id: str
    abstraction: AbstractionKind
    universe: ObjectUniverse  # task-level constants (no NODE / PIXEL)
    predicates: tuple[PredicateDef, ...]
    schemes: tuple[ActionSchemeDef, ...]
    test_patterns: tuple[TestPattern, ...]
    fired: tuple[str, ...] = field(default=())

    @property
    def name(self) -> str:
        return f"arc-{self.task_id}-{self.abstraction.value}".lower()


def instance_universe(graph: AbstractGraph, shared: ObjectUniverse) -> ObjectUniverse:
    h, w = graph.grid_dims
    objs = dict(shared.objects)
    objs[T.NODE] = tuple(n.id for n in graph.nodes if n.active)
    objs[T.PIXEL] = tuple((r, c) for r in range(h) for c in range(w))
    return ObjectUniverse(objs)


def describe_instances(
    task: Task, kind: AbstractionKind
) -> tuple[ObjectUniverse, list[InstanceDescription], list[InstanceDescription]]:
    """Task-level constants plus one description per train/test pair."""
    kind = AbstractionKind(kind)
    train_in = [abstract(p.input, kind) for p in task.train]
    test_in = [abstract(p.input, kind) for p in task.test]
    sizes = set()
    for g in train_in + test_in:
        sizes.update(n.size for n in g.nodes)
    for p in task.train:
        sizes.update(n.size for n in abstract(p.output, kind).nodes)
    shared = ObjectUniverse({T.COLOR: tuple(task.colors()), T.SIZE: tuple(sorted(sizes)), **FIXED_OBJECTS})

    def describe(pairs, graphs, tag):
        return [
            InstanceDescription(f"{task.id}-{tag}-{i}", g, instance_universe(g, shared), p.input, p.output)
            for i, (p, g) in enumerate(zip(pairs, graphs))
        ]

    return shared, describe(task.train, train_in, "train"), describe(task.test, test_in, "test")


def build_domain(
    task: Task, kind: AbstractionKind
) -> tuple[DomainModel, list[InstanceDescription], list[InstanceDescription]]:
    kind = AbstractionKind(kind)
    preds, schemes = catalog_for(kind)
    shared, train, test = describe_instances(task, kind)
    train_in = [i.graph for i in train]
    test_in = [i.graph for i in test]
    train_out = [abstract(p.output, kind) for p in task.train]
    fired = fired_constraints(task, train_in, train_out)
    kept = prune_actions(task, train_in, train_out, schemes)
    if not kept:
        raise EmptyDomain(f"{task.id}/{kind.value}: all action schemes pruned")
    patterns = predicate_constraints(task, train_in + test_in, preds)
    model = DomainModel(task.id, kind, shared, tuple(preds), tuple(kept), tuple(patterns), tuple(fired))
    return model, train, test


def initial_atoms(model: DomainModel, inst: InstanceDescription) -> list[tuple]:
    """Ground atoms of the initial state, as (predicate, *object names)."""
    g = inst.graph
    names = {p.name for p in model.predicates}
    nodes = [n for n in g.nodes if n.active]
    f = g.flags
    N = lambda i: object_name(T.NODE, i)  # noqa: E731
    C = lambda c: object_name(T.COLOR, c)  # noqa: E731
    atoms: list[tuple] = []
    if "background" in names:
        atoms.append(("background", C(g.background)))
    for c in model.universe[T.COLOR]:
        if "color-most" in names and c in f.color_most:
            atoms.append(("color-most", C(c)))
        if "color-least" in names and c in f.color_least:
            atoms.append(("color-least", C(c)))
    for n in nodes:
        if "node-color" in names and n.color is not None:
            atoms.append(("node-color", N(n.id), C(n.color)))
        if "node-size" in names:
            atoms.append(("node-size", N(n.id), object_name(T.SIZE, n.size)))
        if "node-shape" in names:
            atoms.append(("node-shape", N(n.id), n.shape.value))
        for pred, attr in UNARY_FLAG_PREDICATES.items():
            if pred in names and n.id in getattr(f, attr):
                atoms.append((pred, N(n.id)))
        if "denoising-color" in names and n.id in f.denoise:
            atoms.append(("denoising-color", N(n.id), C(f.denoise_color[n.id])))
        if "contain-pixel" in names:
            atoms.extend(("contain-pixel", N(n.id), object_name(T.PIXEL, p)) for p in sorted(n.pixels))
    if g.kind not in NO_RELATIONS and len(nodes) > 1:
        occ = occupancy(nodes)
        for a in nodes:
            for b in nodes:
                if a.id == b.id:
                    continue
                dirs = spatial_directions(a, b, occ)
                if "node-spatial" in names:
                    atoms.extend(("node-spatial", N(a.id), N(b.id), d) for d in dirs)
                if "node-diagonal" in names and any(d not in M_DIRECTIONS[:4] for d in dirs):
                    atoms.append(("node-diagonal", N(a.id), N(b.id)))
                if "same-color" in names and same_color(a, b):
                    atoms.append(("same-color", N(a.id), N(b.id)))
                if "congruent" in names and congruent(a, b):
                    atoms.append(("congruent", N(a.id), N(b.id)))
                if "contain-node" in names and contains(a, b):
                    atoms.append(("contain-node", N(a.id), N(b.id)))
                if "partially-contain-node" in names and partially_contains(a, b, g.grid_dims):
                    atoms.append(("partially-contain-node", N(a.id), N(b.id)))
                if "relative-position" in names:
                    rp = relative_position(a, b)
                    if rp is not None:
                        atoms.append(("relative-position", N(a.id), N(b.id), rp))
    if "pixel-color" in names:
        h, w = g.grid_dims
        cells = inst.input.cells
        atoms.extend(
            ("pixel-color", object_name(T.PIXEL, (r, c)), C(int(cells[r, c])))
            for r in range(h)
            for c in range(w)
        )
    return atoms


def goal_atoms(inst: InstanceDescription) -> list[tuple]:
    if inst.goal is None:
        return []
    h, w = inst.goal.shape
    cells = inst.goal.cells
    return [
        ("pixel-color", object_name(T.PIXEL, (r, c)), object_name(T.COLOR, int(cells[r, c])))
        for r in range(h)
        for c in range(w)
    ]
