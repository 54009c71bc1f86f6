"""Grid -> object graph abstractions.

Each abstraction segments a grid into nodes (pixel sets with a color, a size
and a shape class), derives per-node flags used for counting and sorting
conditions, and relations between node pairs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np
from scipy import ndimage

from .arc_io import Grid, Task, ValidationError

Pixel = tuple[int, int]


class UnsupportedAbstraction(Exception):
    pass


class AbstractionKind(str, Enum):
    CC4 = "CC4"
    CC8 = "CC8"
    CC4_B = "CC4_B"
    CC8_B = "CC8_B"
    CC4_ALL = "CC4_ALL"
    CC8_ALL = "CC8_ALL"
    SAME_COLOR = "SAME_COLOR"
    MULTI_COLOR_4 = "MULTI_COLOR_4"
    MULTI_COLOR_8 = "MULTI_COLOR_8"
    VERTICAL = "VERTICAL"
    HORIZONTAL = "HORIZONTAL"
    PIXELS = "PIXELS"
    IMAGE = "IMAGE"
    MAX_RECT = "MAX_RECT"
    BG_RECT = "BG_RECT"
    CC4_SPA = "CC4_SPA"
    CC8_SPA = "CC8_SPA"
    CC4_CON = "CC4_CON"
    CC8_CON = "CC8_CON"

    def __str__(self) -> str:
        return self.value


K = AbstractionKind

# kinds whose node sets are copies of CC4/CC8; they only swap the catalog
CATALOG_VARIANTS = {K.CC4_SPA: K.CC4, K.CC8_SPA: K.CC8, K.CC4_CON: K.CC4, K.CC8_CON: K.CC8}
NO_RELATIONS = {K.PIXELS, K.IMAGE}


class Shape(str, Enum):
    SINGLE_PIXEL = "single-pixel"
    SQUARE = "square"
    RECTANGLE = "rectangle"
    VERTICAL_LINE = "vertical-line"
    HORIZONTAL_LINE = "horizontal-line"
    LEFT_DIAGONAL_LINE = "left-diagonal-line"
    RIGHT_DIAGONAL_LINE = "right-diagonal-line"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


# order matters: it is the index order of SHAPE objects
SHAPES = tuple(Shape)

M_DIRECTIONS = ("left", "right", "up", "down", "left-up", "left-down", "right-up", "right-down")
AXIS_DIRECTIONS = M_DIRECTIONS[:4]
DELTAS = {
    "left": (0, -1),
    "right": (0, 1),
    "up": (-1, 0),
    "down": (1, 0),
    "left-up": (-1, -1),
    "left-down": (1, -1),
    "right-up": (-1, 1),
    "right-down": (1, 1),
}
OPPOSITE = {
    "left": "right",
    "right": "left",
    "up": "down",
    "down": "up",
    "left-up": "right-down",
    "right-down": "left-up",
    "left-down": "right-up",
    "right-up": "left-down",
}


def classify_shape(pixels: Iterable[Pixel]) -> Shape:
    pix = pixels if isinstance(pixels, (set, frozenset)) else set(pixels)
    n = len(pix)
    if n == 0:
        raise ValidationError("cannot classify an empty pixel set")
    if n == 1:
        return Shape.SINGLE_PIXEL
    rows = [r for r, _ in pix]
    cols = [c for _, c in pix]
    r0, r1, c0, c1 = min(rows), max(rows), min(cols), max(cols)
    h, w = r1 - r0 + 1, c1 - c0 + 1
    if n == h * w:
        if h >= 2 and w >= 2:
            return Shape.SQUARE if h == w else Shape.RECTANGLE
        return Shape.VERTICAL_LINE if w == 1 else Shape.HORIZONTAL_LINE
    if h == w == n:
        if all((r0 + i, c0 + i) in pix for i in range(n)):
            return Shape.RIGHT_DIAGONAL_LINE
        if all((r0 + i, c1 - i) in pix for i in range(n)):
            return Shape.LEFT_DIAGONAL_LINE
    return Shape.UNKNOWN


class Node:
    """An object of an abstract graph.

    ``color`` is None for multi-colored nodes; ``colormap`` then holds the
    color of every pixel. Nodes are treated as immutable values: effects build
    replacements via :meth:`with_cells`, keeping ``id``.
    """

    __slots__ = ("id", "pixels", "color", "colormap", "active", "__dict__")

    def __init__(
        self,
        id: int,
        pixels: Iterable[Pixel],
        color: Optional[int] = None,
        colormap: Optional[Mapping[Pixel, int]] = None,
        active: bool = True,
    ):
        self.id = id
        self.pixels = pixels if isinstance(pixels, frozenset) else frozenset(pixels)
        if not self.pixels:
            raise ValidationError("node needs at least one pixel")
        if color is None and colormap is None:
            raise ValidationError("node needs a color or a colormap")
        self.color = color
        self.colormap = dict(colormap) if colormap is not None and color is None else None
        self.active = active

    @classmethod
    def from_cells(cls, id: int, cells: Mapping[Pixel, int], multicolor: bool = False) -> "Node":
        colors = set(cells.values())
        if len(colors) == 1 and not multicolor:
            return cls(id, frozenset(cells), color=next(iter(colors)))
        return cls(id, frozenset(cells), colormap=cells)

    def color_at(self, p: Pixel) -> int:
        return self.color if self.color is not None else self.colormap[p]

    def cells(self) -> dict[Pixel, int]:
        if self.color is not None:
            return dict.fromkeys(self.pixels, self.color)
        return dict(self.colormap)

    def with_cells(self, cells: Mapping[Pixel, int], multicolor: bool = False) -> "Node":
        return Node.from_cells(self.id, cells, multicolor=multicolor)

    def with_color(self, color: int) -> "Node":
        return Node(self.id, self.pixels, color=color)

    @property
    def size(self) -> int:
        return len(self.pixels)

    @cached_property
    def bbox(self) -> tuple[int, int, int, int]:
        rows = [r for r, _ in self.pixels]
        cols = [c for _, c in self.pixels]
        return (min(rows), min(cols), max(rows), max(cols))

    @cached_property
    def shape(self) -> Shape:
        return classify_shape(self.pixels)

    @cached_property
    def rows(self) -> frozenset[int]:
        return frozenset(r for r, _ in self.pixels)

    @cached_property
    def cols(self) -> frozenset[int]:
        return frozenset(c for _, c in self.pixels)

    @cached_property
    def pattern(self) -> frozenset[Pixel]:
        r0, c0, _, _ = self.bbox
        return frozenset((r - r0, c - c0) for r, c in self.pixels)

    @cached_property
    def anchor(self) -> Pixel:
        return min(self.pixels)

    def signature(self) -> tuple:
        return (self.size, self.color, self.shape.value)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Node):
            return NotImplemented
        return (
            self.id == other.id
            and self.pixels == other.pixels
            and self.active == other.active
            and self.cells() == other.cells()
        )

    def __hash__(self) -> int:
        return hash((self.id, self.pixels))

    def __repr__(self) -> str:
        col = self.color if self.color is not None else "multi"
        return f"Node({self.id}, size={self.size}, color={col}, {self.shape.value})"


@dataclass(frozen=True)
class NodeFlags:
    size_max: frozenset[int] = frozenset()
    size_min: frozenset[int] = frozenset()
    odd: frozenset[int] = frozenset()
    even: frozenset[int] = frozenset()
    color_max: frozenset[int] = frozenset()
    color_min: frozenset[int] = frozenset()
    color_most: frozenset[int] = frozenset()  # colors, not nodes
    color_least: frozenset[int] = frozenset()
    up_border: frozenset[int] = frozenset()
    down_border: frozenset[int] = frozenset()
    left_border: frozenset[int] = frozenset()
    right_border: frozenset[int] = frozenset()
    left_diagonal: frozenset[int] = frozenset()
    right_diagonal: frozenset[int] = frozenset()
    vertical_middle: frozenset[int] = frozenset()
    horizontal_middle: frozenset[int] = frozenset()
    denoise: frozenset[int] = frozenset()
    denoise_color: Mapping[int, int] = field(default_factory=dict)


def _pick_color(counts: Mapping[int, int], most: bool) -> Optional[int]:
    if not counts:
        return None
    if most:
        return min(counts, key=lambda c: (-counts[c], c))
    return min(counts, key=lambda c: (counts[c], c))


def _color_counts(active: Sequence[Node], background: int) -> dict[int, int]:
    pix_colors: Counter = Counter()
    for n in active:
        if n.color is not None:
            pix_colors[n.color] += n.size
        else:
            pix_colors.update(n.colormap.values())
    return {c: k for c, k in pix_colors.items() if c != background} or dict(pix_colors)


def flag_set(nodes: Sequence[Node], dims: tuple[int, int], background: int, attr: str) -> frozenset[int]:
    """One NodeFlags field (except the denoise pair), computed on its own.

    Search states evaluate a handful of flags per step, so computing them one
    at a time avoids rebuilding the whole table after every action.
    """
    active = [n for n in nodes if n.active]
    if not active:
        return frozenset()
    h, w = dims

    def ids(pred) -> frozenset[int]:
        return frozenset(n.id for n in active if pred(n))

    if attr in ("size_max", "size_min"):
        sizes = [n.size for n in active]
        target = max(sizes) if attr == "size_max" else min(sizes)
        return ids(lambda n: n.size == target)
    if attr in ("color_max", "color_min"):
        counts = Counter(n.color for n in active if n.color is not None)
        target = _pick_color(counts, most=attr == "color_max")
        return ids(lambda n: n.color is not None and n.color == target)
    if attr in ("color_most", "color_least"):
        c = _pick_color(_color_counts(active, background), most=attr == "color_most")
        return frozenset([c]) if c is not None else frozenset()
    if attr == "odd":
        return ids(lambda n: n.size % 2 == 1)
    if attr == "even":
        return ids(lambda n: n.size % 2 == 0)
    if attr == "up_border":
        return ids(lambda n: n.bbox[0] == 0)
    if attr == "down_border":
        return ids(lambda n: n.bbox[2] == h - 1)
    if attr == "left_border":
        return ids(lambda n: n.bbox[1] == 0)
    if attr == "right_border":
        return ids(lambda n: n.bbox[3] == w - 1)
    if attr == "left_diagonal":
        return ids(lambda n: any(r + c == w - 1 for r, c in n.pixels))
    if attr == "right_diagonal":
        return ids(lambda n: any(r == c for r, c in n.pixels))
    if attr == "vertical_middle":
        mid_cols = {(w - 1) // 2, w // 2}
        return ids(lambda n: bool(n.cols & mid_cols))
    if attr == "horizontal_middle":
        mid_rows = {(h - 1) // 2, h // 2}
        return ids(lambda n: bool(n.rows & mid_rows))
    raise KeyError(attr)


FLAG_FIELDS = tuple(f for f in NodeFlags.__dataclass_fields__ if f not in ("denoise", "denoise_color"))


def compute_flags(
    nodes: Sequence[Node],
    dims: tuple[int, int],
    background: int,
    denoise: frozenset[int] = frozenset(),
    denoise_color: Optional[Mapping[int, int]] = None,
) -> NodeFlags:
    fields = {attr: flag_set(nodes, dims, background, attr) for attr in FLAG_FIELDS}
    return NodeFlags(**fields, denoise=denoise, denoise_color=dict(denoise_color or {}))


# ---------------------------------------------------------------- relations


def spatial_directions(a: Node, b: Node, occupied: Mapping[Pixel, int]) -> list[str]:
    """Directions d with ``a`` lying ``d`` of ``b`` (e.g. "left": a left of b).

    ``occupied`` maps pixels to the id of an active node covering them and is
    used to reject diagonal alignments blocked by a third node.
    """
    out = []
    ar0, ac0, ar1, ac1 = a.bbox
    br0, bc0, br1, bc1 = b.bbox
    if a.rows & b.rows:
        if ac1 < bc0:
            out.append("left")
        elif ac0 > bc1:
            out.append("right")
    if a.cols & b.cols:
        if ar1 < br0:
            out.append("up")
        elif ar0 > br1:
            out.append("down")
    if a.shape is Shape.UNKNOWN or b.shape is Shape.UNKNOWN:
        return out
    # (corner of a, facing corner of b, direction of a relative to b)
    candidates = (
        ((ar1, ac1), (br0, bc0), "left-up"),
        ((ar0, ac0), (br1, bc1), "right-down"),
        ((ar1, ac0), (br0, bc1), "right-up"),
        ((ar0, ac1), (br1, bc0), "left-down"),
    )
    for ca, cb, d in candidates:
        if ca not in a.pixels or cb not in b.pixels:
            continue
        dr, dc = cb[0] - ca[0], cb[1] - ca[1]
        # walking from a to b goes opposite to d
        sr, sc = DELTAS[OPPOSITE[d]]
        k = abs(dr)
        if k == 0 or abs(dc) != k or dr != k * sr or dc != k * sc:
            continue
        if any((ca[0] + j * sr, ca[1] + j * sc) in occupied for j in range(1, k)):
            continue
        out.append(d)
    return out


def relative_position(a: Node, b: Node) -> Optional[str]:
    """Position of ``a`` relative to ``b`` from bounding-box centers."""
    ar0, ac0, ar1, ac1 = a.bbox
    br0, bc0, br1, bc1 = b.bbox
    dr = (ar0 + ar1) - (br0 + br1)
    dc = (ac0 + ac1) - (bc0 + bc1)
    horiz = "left" if dc < 0 else "right" if dc > 0 else ""
    vert = "up" if dr < 0 else "down" if dr > 0 else ""
    if horiz and vert:
        return f"{horiz}-{vert}"
    return horiz or vert or None


def same_color(a: Node, b: Node) -> bool:
    return a.color is not None and a.color == b.color


def congruent(a: Node, b: Node) -> bool:
    return a.size == b.size and a.pattern == b.pattern


def contains(a: Node, b: Node) -> bool:
    r0, c0, r1, c1 = a.bbox
    return all(r0 < r < r1 and c0 < c < c1 for r, c in b.pixels) and not (a.pixels & b.pixels)


def partially_contains(a: Node, b: Node, dims: tuple[int, int]) -> bool:
    if contains(a, b):
        return False
    r0, c0, r1, c1 = a.bbox
    if a.pixels & b.pixels:
        return False
    if not all(r0 <= r <= r1 and c0 <= c <= c1 for r, c in b.pixels):
        return False
    h, w = dims
    br0, bc0, br1, bc1 = b.bbox
    return br0 == 0 or bc0 == 0 or br1 == h - 1 or bc1 == w - 1


@dataclass(frozen=True)
class RelationSet:
    spatial: frozenset[tuple[int, int, str]] = frozenset()
    diagonal: frozenset[tuple[int, int]] = frozenset()
    same_color: frozenset[tuple[int, int]] = frozenset()
    congruent: frozenset[tuple[int, int]] = frozenset()
    contains: frozenset[tuple[int, int]] = frozenset()
    partially_contains: frozenset[tuple[int, int]] = frozenset()
    relative_position: frozenset[tuple[int, int, str]] = frozenset()


def occupancy(nodes: Iterable[Node]) -> dict[Pixel, int]:
    occ: dict[Pixel, int] = {}
    for n in nodes:
        if n.active:
            for p in n.pixels:
                occ[p] = n.id
    return occ


def relations_between(nodes: Sequence[Node], dims: tuple[int, int]) -> RelationSet:
    active = [n for n in nodes if n.active]
    occ = occupancy(active)
    spatial, diagonal, same, cong, cont, part, rel = set(), set(), set(), set(), set(), set(), set()
    for a in active:
        for b in active:
            if a.id == b.id:
                continue
            dirs = spatial_directions(a, b, occ)
            for d in dirs:
                spatial.add((a.id, b.id, d))
            if any(d not in AXIS_DIRECTIONS for d in dirs):
                diagonal.add((a.id, b.id))
            if same_color(a, b):
                same.add((a.id, b.id))
            if congruent(a, b):
                cong.add((a.id, b.id))
            if contains(a, b):
                cont.add((a.id, b.id))
            elif partially_contains(a, b, dims):
                part.add((a.id, b.id))
            rp = relative_position(a, b)
            if rp is not None:
                rel.add((a.id, b.id, rp))
    return RelationSet(
        frozenset(spatial),
        frozenset(diagonal),
        frozenset(same),
        frozenset(cong),
        frozenset(cont),
        frozenset(part),
        frozenset(rel),
    )


# ---------------------------------------------------------------- graphs


class AbstractGraph:
    """Abstraction of one grid. Immutable after construction."""

    def __init__(
        self,
        kind: AbstractionKind,
        background: int,
        nodes: Sequence[Node],
        grid_dims: tuple[int, int],
        denoise: frozenset[int] = frozenset(),
        denoise_color: Optional[Mapping[int, int]] = None,
    ):
        self.kind = kind
        self.background = background
        self.nodes = tuple(nodes)
        self.grid_dims = grid_dims
        self.flags = compute_flags(self.nodes, grid_dims, background, denoise, denoise_color)

    @cached_property
    def relations(self) -> RelationSet:
        return compute_relations(self)

    def signatures(self) -> tuple:
        return tuple(sorted(Counter(n.signature() for n in self.nodes if n.active).items(), key=repr))

    def render(self) -> np.ndarray:
        out = np.full(self.grid_dims, self.background, dtype=np.int8)
        for n in self.nodes:
            if n.active:
                for p in n.pixels:
                    out[p] = n.color_at(p)
        return out

    def to_dict(self) -> dict:
        """JSON-friendly dump for diagnostics."""
        f = self.flags
        flag_dict = {
            name: sorted(getattr(f, name))
            for name in NodeFlags.__dataclass_fields__
            if name != "denoise_color"
        }
        flag_dict["denoise_color"] = {str(k): v for k, v in sorted(f.denoise_color.items())}
        d = {
            "kind": self.kind.value,
            "background": self.background,
            "dims": list(self.grid_dims),
            "nodes": [
                {
                    "id": n.id,
                    "size": n.size,
                    "color": n.color,
                    "shape": n.shape.value,
                    "pixels": sorted([list(p) for p in n.pixels]),
                    **(
                        {"colors": [n.colormap[p] for p in sorted(n.pixels)]}
                        if n.color is None
                        else {}
                    ),
                }
                for n in self.nodes
            ],
            "flags": flag_dict,
        }
        if self.kind not in NO_RELATIONS:
            r = self.relations
            d["relations"] = {
                name: sorted(list(t) for t in getattr(r, name))
                for name in RelationSet.__dataclass_fields__
            }
        return d


def compute_relations(graph: AbstractGraph) -> RelationSet:
    if graph.kind in NO_RELATIONS:
        raise UnsupportedAbstraction(f"no relations for {graph.kind.value} nodes")
    return relations_between(graph.nodes, graph.grid_dims)


def background_of(grid: Grid) -> int:
    counts = np.bincount(grid.cells.ravel().astype(np.int64), minlength=10)
    if counts[0] > 0:
        return 0
    return int(np.argmax(counts))  # argmax returns the first (smallest) index on ties


_STRUCT4 = ndimage.generate_binary_structure(2, 1)
_STRUCT8 = ndimage.generate_binary_structure(2, 2)


def components(mask: np.ndarray, connectivity: int) -> list[frozenset[Pixel]]:
    labels, count = ndimage.label(mask, structure=_STRUCT4 if connectivity == 4 else _STRUCT8)
    if count == 0:
        return []
    out: list[list[Pixel]] = [[] for _ in range(count)]
    rr, cc = np.nonzero(labels)
    for r, c in zip(rr.tolist(), cc.tolist()):
        out[labels[r, c] - 1].append((r, c))
    return [frozenset(p) for p in out]


def max_rectangle(mask: np.ndarray) -> Optional[tuple[int, int, int, int]]:
    """Largest all-True axis-aligned rectangle as (top, left, bottom, right).

    Histogram-of-heights sweep; ties go to the larger area, then the topmost,
    then the leftmost corner.
    """
    h, w = mask.shape
    heights = [0] * w
    best = None  # key (-area, top, left)
    best_rect = None
    for r in range(h):
        for c in range(w):
            heights[c] = heights[c] + 1 if mask[r, c] else 0
        stack: list[int] = []
        for c in range(w + 1):
            cur = heights[c] if c < w else 0
            while stack and heights[stack[-1]] >= cur:
                top = stack.pop()
                height = heights[top]
                if height == 0:
                    continue
                left = stack[-1] + 1 if stack else 0
                width = c - left
                key = (-(height * width), r - height + 1, left)
                if best is None or key < best:
                    best = key
                    best_rect = (r - height + 1, left, r, c - 1)
            stack.append(c)
    return best_rect


def _split_rect(pixels: frozenset[Pixel], dims: tuple[int, int]) -> list[frozenset[Pixel]]:
    mask = np.zeros(dims, dtype=bool)
    for p in pixels:
        mask[p] = True
    rect = max_rectangle(mask)
    r0, c0, r1, c1 = rect
    rect_pix = frozenset((r, c) for r in range(r0, r1 + 1) for c in range(c0, c1 + 1))
    rest = np.zeros(dims, dtype=bool)
    for p in pixels - rect_pix:
        rest[p] = True
    return [rect_pix] + components(rest, 4)


def _touches_border(pixels: Iterable[Pixel], dims: tuple[int, int]) -> bool:
    h, w = dims
    return any(r == 0 or c == 0 or r == h - 1 or c == w - 1 for r, c in pixels)


def _color_components(arr: np.ndarray, colors: Iterable[int], connectivity: int) -> list[tuple[int, frozenset]]:
    out = []
    for c in colors:
        for comp in components(arr == c, connectivity):
            out.append((c, comp))
    return out


def _denoise_info(arr: np.ndarray, background: int, nodes: Sequence[Node]) -> tuple[frozenset[int], dict[int, int]]:
    h, w = arr.shape
    colors = sorted(set(int(v) for v in np.unique(arr)) - {background})
    noise_pixels = set()
    for _, comp in _color_components(arr, colors, 4):
        if len(comp) == 1:
            noise_pixels |= comp
    ids, fill = [], {}
    for n in nodes:
        (p,) = n.pixels
        if p not in noise_pixels:
            continue
        ids.append(n.id)
        r, c = p
        neigh = Counter(
            int(arr[r + dr, c + dc])
            for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1))
            if 0 <= r + dr < h and 0 <= c + dc < w
        )
        fill[n.id] = _pick_color(neigh, most=True)
    return frozenset(ids), fill


def _node_pixel_sets(arr: np.ndarray, kind: AbstractionKind, bg: int) -> list[tuple[Optional[int], frozenset]]:
    """Per kind: (color or None for multi-color, pixel set) pairs."""
    kind = CATALOG_VARIANTS.get(kind, kind)
    present = sorted(set(int(v) for v in np.unique(arr)))
    h, w = arr.shape
    if kind in (K.CC4, K.CC8):
        return _color_components(arr, [c for c in present if c != bg], 4 if kind is K.CC4 else 8)
    if kind in (K.CC4_B, K.CC8_B):
        return _color_components(arr, [c for c in present if c != 0], 4 if kind is K.CC4_B else 8)
    if kind in (K.CC4_ALL, K.CC8_ALL):
        return _color_components(arr, present, 4 if kind is K.CC4_ALL else 8)
    if kind is K.SAME_COLOR:
        out = []
        for c in present:
            if c != bg:
                rr, cc = np.nonzero(arr == c)
                out.append((c, frozenset(zip(rr.tolist(), cc.tolist()))))
        return out
    if kind in (K.MULTI_COLOR_4, K.MULTI_COLOR_8):
        return [(None, comp) for comp in components(arr != bg, 4 if kind is K.MULTI_COLOR_4 else 8)]
    if kind in (K.VERTICAL, K.HORIZONTAL):
        out = []
        lines = range(w) if kind is K.VERTICAL else range(h)
        for i in lines:
            seq = arr[:, i] if kind is K.VERTICAL else arr[i, :]
            j = 0
            while j < len(seq):
                k = j
                while k + 1 < len(seq) and seq[k + 1] == seq[j]:
                    k += 1
                color = int(seq[j])
                if color != bg:
                    if kind is K.VERTICAL:
                        pix = frozenset((r, i) for r in range(j, k + 1))
                    else:
                        pix = frozenset((i, c) for c in range(j, k + 1))
                    out.append((color, pix))
                j = k + 1
        return out
    if kind is K.PIXELS:
        return [(int(arr[r, c]), frozenset([(r, c)])) for r in range(h) for c in range(w)]
    if kind is K.IMAGE:
        return [(None, frozenset((r, c) for r in range(h) for c in range(w)))]
    if kind is K.MAX_RECT:
        out = []
        for c, comp in _color_components(arr, present, 4):
            out.extend((c, part) for part in _split_rect(comp, (h, w)))
        return out
    if kind is K.BG_RECT:
        out = _color_components(arr, [c for c in present if c != bg], 4)
        for comp in components(arr == bg, 4):
            if _touches_border(comp, (h, w)):
                out.append((bg, _split_rect(comp, (h, w))[0]))
        return out
    raise UnsupportedAbstraction(kind)


def abstract(grid: Grid, kind: AbstractionKind) -> AbstractGraph:
    kind = AbstractionKind(kind)
    arr = grid.cells
    bg = background_of(grid)
    parts = _node_pixel_sets(arr, kind, bg)
    parts.sort(key=lambda cp: min(cp[1]))
    nodes = []
    for i, (color, pix) in enumerate(parts):
        if color is None:
            nodes.append(Node(i, pix, colormap={p: int(arr[p]) for p in pix}))
        else:
            nodes.append(Node(i, pix, color=color))
    denoise, fill = (frozenset(), {})
    if kind is K.PIXELS:
        denoise, fill = _denoise_info(arr, bg, nodes)
    return AbstractGraph(kind, bg, nodes, grid.shape, denoise, fill)


def dedupe_abstractions(task: Task, kinds: Sequence[AbstractionKind]) -> list[AbstractionKind]:
    """Drop kinds whose node signatures repeat an earlier kept kind on every
    training input. Catalog variants (SPA/CON) share CC4/CC8 nodes by design
    and are never dropped."""
    kept: list[AbstractionKind] = []
    sigs: dict[AbstractionKind, list] = {}
    for kind in kinds:
        kind = AbstractionKind(kind)
        if kind in CATALOG_VARIANTS:
            if kind not in kept:
                kept.append(kind)
            continue
        mine = [abstract(p.input, kind).signatures() for p in task.train]
        if any(sigs[k] == mine for k in sigs):
            continue
        sigs[kind] = mine
        kept.append(kind)
    return kept
