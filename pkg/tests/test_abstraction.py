import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arcplan.abstraction import (
    AbstractionKind as K,
    M_DIRECTIONS,
    OPPOSITE,
    Node,
    Shape,
    UnsupportedAbstraction,
    abstract,
    background_of,
    classify_shape,
    compute_relations,
    dedupe_abstractions,
    max_rectangle,
)
from arcplan.arc_io import Grid, Task, TaskInstance

from helpers import flood_components, random_grid, shape_oracle


grids = st.integers(1, 8).flatmap(
    lambda h: st.integers(1, 8).flatmap(
        lambda w: st.lists(st.lists(st.integers(0, 4), min_size=w, max_size=w), min_size=h, max_size=h)
    )
)


def node_sets(graph):
    return {n.pixels for n in graph.nodes}


@pytest.mark.parametrize("seed", range(200))
def test_cc_matches_flood_fill(seed):
    rng = random.Random(seed)
    arr = random_grid(rng, max_side=15)
    g = Grid(arr)
    bg = background_of(g)
    for kind, conn in ((K.CC4, 4), (K.CC8, 8)):
        want = set(flood_components(arr, lambda v: v != bg, conn))
        assert node_sets(abstract(g, kind)) == want


@given(grids)
def test_all_variant_includes_background(rows):
    g = Grid(rows)
    graph = abstract(g, K.CC4_ALL)
    covered = sorted(p for n in graph.nodes for p in n.pixels)
    assert covered == [(r, c) for r in range(g.height) for c in range(g.width)]


def test_shape_classification_all_subsets_of_4x4():
    box = [(r, c) for r in range(4) for c in range(4)]
    for mask in range(1, 1 << 16):
        pix = [box[i] for i in range(16) if mask >> i & 1]
        assert classify_shape(pix).value == shape_oracle(pix), pix


def test_shape_examples():
    assert classify_shape([(0, 0)]) is Shape.SINGLE_PIXEL
    assert classify_shape([(0, 0), (0, 1), (1, 0), (1, 1)]) is Shape.SQUARE
    assert classify_shape([(0, 0), (1, 1), (2, 2)]) is Shape.RIGHT_DIAGONAL_LINE
    assert classify_shape([(0, 2), (1, 1), (2, 0)]) is Shape.LEFT_DIAGONAL_LINE
    assert classify_shape([(0, 0), (1, 0), (1, 1)]) is Shape.UNKNOWN


def brute_max_rect(mask):
    h, w = mask.shape
    best = None
    for r0 in range(h):
        for c0 in range(w):
            for r1 in range(r0, h):
                for c1 in range(c0, w):
                    if mask[r0 : r1 + 1, c0 : c1 + 1].all():
                        key = (-(r1 - r0 + 1) * (c1 - c0 + 1), r0, c0)
                        if best is None or key < best[0]:
                            best = (key, (r0, c0, r1, c1))
    return None if best is None else best[1]


@settings(max_examples=200)
@given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**49 - 1))
def test_max_rectangle_matches_brute_force(h, w, bits):
    mask = np.array([[bits >> (r * w + c) & 1 for c in range(w)] for r in range(h)], dtype=bool)
    got = max_rectangle(mask)
    want = brute_max_rect(mask)
    if want is None:
        assert got is None
    else:
        r0, c0, r1, c1 = got
        assert (r1 - r0 + 1) * (c1 - c0 + 1) == (want[2] - want[0] + 1) * (want[3] - want[1] + 1)
        assert got == want


@given(grids)
def test_pixels_and_image(rows):
    g = Grid(rows)
    px = abstract(g, K.PIXELS)
    assert len(px.nodes) == g.height * g.width
    assert all(n.color == g[next(iter(n.pixels))] for n in px.nodes)
    img = abstract(g, K.IMAGE)
    assert len(img.nodes) == 1 and img.nodes[0].size == g.height * g.width
    assert np.array_equal(img.render(), g.cells)


@given(grids)
def test_render_reconstructs_grid(rows):
    g = Grid(rows)
    for kind in (K.CC4, K.CC8, K.MULTI_COLOR_4, K.SAME_COLOR, K.VERTICAL, K.HORIZONTAL, K.MAX_RECT, K.CC4_ALL):
        assert np.array_equal(abstract(g, kind).render(), g.cells), kind


@given(grids)
def test_max_rect_partitions_components(rows):
    g = Grid(rows)
    graph = abstract(g, K.MAX_RECT)
    seen = set()
    for n in graph.nodes:
        assert not (n.pixels & seen)
        seen |= n.pixels
    assert len(seen) == g.height * g.width


def test_vertical_runs():
    g = Grid([[1, 0, 2], [1, 2, 2], [0, 2, 1]])
    graph = abstract(g, K.VERTICAL)
    assert sorted(sorted(n.pixels) for n in graph.nodes) == [
        [(0, 0), (1, 0)],
        [(0, 2), (1, 2)],
        [(1, 1), (2, 1)],
        [(2, 2)],
    ]


def test_bg_rect_only_takes_border_touching_background():
    g = Grid([[0, 0, 0, 0], [0, 3, 3, 3], [0, 3, 0, 3], [0, 3, 3, 3]])
    graph = abstract(g, K.BG_RECT)
    bg_nodes = [n for n in graph.nodes if n.color == 0]
    assert len(bg_nodes) == 1
    assert bg_nodes[0].pixels == {(0, 0), (0, 1), (0, 2), (0, 3)}


def test_node_ids_follow_raster_order():
    g = Grid([[0, 0, 5], [1, 0, 0], [0, 2, 2]])
    graph = abstract(g, K.CC4)
    assert [min(n.pixels) for n in graph.nodes] == [(0, 2), (1, 0), (2, 1)]
    assert [n.id for n in graph.nodes] == [0, 1, 2]


def test_background_choice():
    assert background_of(Grid([[3, 3], [0, 3]])) == 0
    assert background_of(Grid([[3, 3], [4, 3]])) == 3
    assert background_of(Grid([[4, 3], [3, 4]])) == 3


def test_flags():
    g = Grid([[1, 0, 2, 2], [0, 0, 0, 0], [1, 1, 0, 2]])
    f = abstract(g, K.CC4).flags
    # nodes: 0 -> (0,0) color1 size1; 1 -> (0,2..3) color2 size2; 2 -> (2,0..1) color1 size2; 3 -> (2,3) color2 size1
    assert f.size_max == {1, 2} and f.size_min == {0, 3}
    assert f.odd == {0, 3} and f.even == {1, 2}
    assert f.color_max == {0, 2}  # both colors have two nodes: the smaller index wins
    assert f.up_border == {0, 1} and f.down_border == {2, 3}
    assert f.left_border == {0, 2} and f.right_border == {1, 3}


def test_pixel_flags_and_denoise():
    g = Grid([[2, 2, 2], [2, 5, 2], [2, 2, 2]])
    graph = abstract(g, K.PIXELS)
    f = graph.flags
    center = 4
    assert center in f.denoise and f.denoise_color[center] == 2
    assert f.right_diagonal == {0, 4, 8} and f.left_diagonal == {2, 4, 6}
    assert f.horizontal_middle == {3, 4, 5} and f.vertical_middle == {1, 4, 7}


# ---------------------------------------------------------------- relations


def direct_spatial(a: Node, b: Node, others) -> set:
    """Relation by definition, evaluated pixel by pixel."""
    out = set()
    arows = {r for r, _ in a.pixels}
    brows = {r for r, _ in b.pixels}
    acols = {c for _, c in a.pixels}
    bcols = {c for _, c in b.pixels}
    if arows & brows:
        if max(c for _, c in a.pixels) < min(c for _, c in b.pixels):
            out.add("left")
        if min(c for _, c in a.pixels) > max(c for _, c in b.pixels):
            out.add("right")
    if acols & bcols:
        if max(r for r, _ in a.pixels) < min(r for r, _ in b.pixels):
            out.add("up")
        if min(r for r, _ in a.pixels) > max(r for r, _ in b.pixels):
            out.add("down")
    if shape_oracle(a.pixels) == "unknown" or shape_oracle(b.pixels) == "unknown":
        return out
    occupied = set().union(*(n.pixels for n in others))
    for pa in a.pixels:
        for pb in b.pixels:
            dr, dc = pb[0] - pa[0], pb[1] - pa[1]
            if dr == 0 or abs(dr) != abs(dc):
                continue
            # the facing corners must be the extreme pixels along that diagonal
            sr, sc = (1 if dr > 0 else -1), (1 if dc > 0 else -1)
            ar = max(r for r, _ in a.pixels) if sr > 0 else min(r for r, _ in a.pixels)
            ac = max(c for _, c in a.pixels) if sc > 0 else min(c for _, c in a.pixels)
            br = min(r for r, _ in b.pixels) if sr > 0 else max(r for r, _ in b.pixels)
            bc = min(c for _, c in b.pixels) if sc > 0 else max(c for _, c in b.pixels)
            if (pa, pb) != ((ar, ac), (br, bc)):
                continue
            path = [(pa[0] + k * sr, pa[1] + k * sc) for k in range(1, abs(dr))]
            if any(p in occupied for p in path):
                continue
            vert = "up" if sr > 0 else "down"
            horiz = "left" if sc > 0 else "right"
            out.add(f"{horiz}-{vert}")
    return out


def random_layout(rng, n=3, size=9):
    arr = np.zeros((size, size), dtype=int)
    shapes = [[(0, 0)], [(0, 0), (0, 1)], [(0, 0), (1, 0)], [(0, 0), (1, 1)], [(0, 0), (0, 1), (1, 0), (1, 1)], [(0, 0), (1, 0), (1, 1)]]
    placed = 0
    while placed < n:
        shp = rng.choice(shapes)
        r0, c0 = rng.randrange(size), rng.randrange(size)
        cells = [(r0 + dr, c0 + dc) for dr, dc in shp]
        if any(not (0 <= r < size and 0 <= c < size) for r, c in cells):
            continue
        if any(arr[r + a, c + b] for r, c in cells for a in (-1, 0, 1) for b in (-1, 0, 1) if 0 <= r + a < size and 0 <= c + b < size):
            continue
        color = rng.randint(1, 3)
        for p in cells:
            arr[p] = color
        placed += 1
    return Grid(arr)


@pytest.mark.parametrize("seed", range(100))
def test_relations_match_definitions(seed):
    g = random_layout(random.Random(seed))
    graph = abstract(g, K.CC8)
    rel = compute_relations(graph)
    nodes = graph.nodes
    h, w = graph.grid_dims
    for a in nodes:
        for b in nodes:
            if a.id == b.id:
                continue
            others = [n for n in nodes if n.id not in (a.id, b.id)]
            want = direct_spatial(a, b, others)
            got = {d for x, y, d in rel.spatial if (x, y) == (a.id, b.id)}
            assert got == want, (a, b)
            assert ((a.id, b.id) in rel.diagonal) == any("-" in d for d in want)
            assert ((a.id, b.id) in rel.same_color) == (a.color == b.color)
            pa = {(r - min(r for r, _ in a.pixels), c - min(c for _, c in a.pixels)) for r, c in a.pixels}
            pb = {(r - min(r for r, _ in b.pixels), c - min(c for _, c in b.pixels)) for r, c in b.pixels}
            assert ((a.id, b.id) in rel.congruent) == (pa == pb)
            r0, c0 = min(r for r, _ in a.pixels), min(c for _, c in a.pixels)
            r1, c1 = max(r for r, _ in a.pixels), max(c for _, c in a.pixels)
            inside = all(r0 < r < r1 and c0 < c < c1 for r, c in b.pixels)
            assert ((a.id, b.id) in rel.contains) == inside
            # centers compared with doubled coordinates
            dr = (r0 + r1) - (min(r for r, _ in b.pixels) + max(r for r, _ in b.pixels))
            dc = (c0 + c1) - (min(c for _, c in b.pixels) + max(c for _, c in b.pixels))
            name = {(-1, -1): "left-up", (-1, 1): "left-down", (1, -1): "right-up", (1, 1): "right-down", (-1, 0): "left", (1, 0): "right", (0, -1): "up", (0, 1): "down"}.get((int(np.sign(dc)), int(np.sign(dr))))
            got_rp = {d for x, y, d in rel.relative_position if (x, y) == (a.id, b.id)}
            assert got_rp == ({name} if name else set())


@pytest.mark.parametrize("seed", range(100))
def test_spatial_symmetry(seed):
    g = random_layout(random.Random(1000 + seed), n=4)
    rel = compute_relations(abstract(g, K.CC8))
    for a, b, d in rel.spatial:
        assert (b, a, OPPOSITE[d]) in rel.spatial
    for a, b, d in rel.relative_position:
        assert (b, a, OPPOSITE[d]) in rel.relative_position


def test_diagonal_blocked_by_third_node():
    g = Grid([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    rel = compute_relations(abstract(g, K.CC4))
    assert (0, 1, "left-up") in rel.spatial
    assert (0, 2, "left-up") not in rel.spatial
    assert (2, 1, "right-down") in rel.spatial


def test_contains_and_partial():
    g = Grid([[4, 4, 4, 4], [4, 0, 0, 4], [4, 0, 7, 4], [4, 4, 4, 4]])
    rel = compute_relations(abstract(g, K.CC4))
    assert (0, 1) in rel.contains and (1, 0) not in rel.contains
    # an open ring still hosts the dot inside its bounding box
    g2 = Grid([[4, 0, 4], [4, 7, 4], [4, 4, 4]])
    rel2 = compute_relations(abstract(g2, K.CC4))
    assert (0, 1) in rel2.contains
    g3 = Grid([[4, 4, 0], [4, 4, 7]])
    rel3 = compute_relations(abstract(g3, K.CC4))
    assert not rel3.contains


def test_no_relations_for_pixel_kinds():
    g = Grid([[1, 2]])
    for kind in (K.PIXELS, K.IMAGE):
        with pytest.raises(UnsupportedAbstraction):
            compute_relations(abstract(g, kind))


def test_relations_irreflexive():
    g = random_layout(random.Random(7), n=4)
    rel = compute_relations(abstract(g, K.CC4))
    for fam in (rel.diagonal, rel.same_color, rel.congruent, rel.contains, rel.partially_contains):
        assert all(a != b for a, b in fam)


# ---------------------------------------------------------------- dedupe


def test_dedupe_drops_identical_cc8():
    g = Grid([[1, 0, 2], [0, 0, 0], [3, 3, 0]])
    t = Task("t", (TaskInstance(g, g),), (TaskInstance(g),))
    kept = dedupe_abstractions(t, [K.CC4, K.CC8, K.CC4_SPA])
    assert kept == [K.CC4, K.CC4_SPA]


def test_dedupe_keeps_distinct_cc8():
    g = Grid([[1, 0], [0, 1]])
    t = Task("t", (TaskInstance(g, g),), (TaskInstance(g),))
    assert dedupe_abstractions(t, [K.CC4, K.CC8]) == [K.CC4, K.CC8]


def test_graph_dump_is_json_ready():
    import json

    g = Grid([[1, 0], [0, 2]])
    for kind in K:
        json.dumps(abstract(g, kind).to_dict())
