"""Independent oracles and task builders shared by the test modules.

Nothing here imports the code under test beyond the plain data types, so
the oracles stay independent of the implementation they check.
"""

from __future__ import annotations

import random
from collections import deque
from pathlib import Path

import numpy as np

from arcplan.arc_io import Grid, Task, TaskInstance

DATA = Path(__file__).parent / "data"
MINI = DATA / "mini"


def flood_components(arr: np.ndarray, keep, connectivity: int) -> list[frozenset]:
    """Connected pixel sets of the cells where ``keep(color)`` holds, grouped
    by equal color, found by breadth-first flood fill."""
    h, w = arr.shape
    seen = np.zeros((h, w), dtype=bool)
    if connectivity == 4:
        nbrs = [(-1, 0), (1, 0), (0, -1), (0, 1)]
    else:
        nbrs = [(dr, dc) for dr in (-1, 0, 1) for dc in (-1, 0, 1) if dr or dc]
    out = []
    for r in range(h):
        for c in range(w):
            if seen[r, c] or not keep(arr[r, c]):
                continue
            color = arr[r, c]
            comp = []
            q = deque([(r, c)])
            seen[r, c] = True
            while q:
                y, x = q.popleft()
                comp.append((y, x))
                for dy, dx in nbrs:
                    yy, xx = y + dy, x + dx
                    if 0 <= yy < h and 0 <= xx < w and not seen[yy, xx] and arr[yy, xx] == color:
                        seen[yy, xx] = True
                        q.append((yy, xx))
            out.append(frozenset(comp))
    return out


def shape_oracle(pixels) -> str:
    pix = set(pixels)
    n = len(pix)
    if n == 1:
        return "single-pixel"
    rows = sorted({r for r, _ in pix})
    cols = sorted({c for _, c in pix})
    r0, c0 = rows[0], cols[0]
    if len(rows) == 1 and cols == list(range(c0, c0 + n)):
        return "horizontal-line"
    if len(cols) == 1 and rows == list(range(r0, r0 + n)):
        return "vertical-line"
    h, w = rows[-1] - r0 + 1, cols[-1] - c0 + 1
    full = {(r, c) for r in range(r0, r0 + h) for c in range(c0, c0 + w)}
    if pix == full:
        return "square" if h == w else "rectangle"
    if pix == {(r0 + i, c0 + i) for i in range(n)}:
        return "right-diagonal-line"
    if pix == {(r0 + i, c0 + n - 1 - i) for i in range(n)}:
        return "left-diagonal-line"
    return "unknown"


def random_grid(rng: random.Random, max_side: int = 15, colors: int = 4, density: float = 0.5) -> np.ndarray:
    h, w = rng.randint(1, max_side), rng.randint(1, max_side)
    arr = np.zeros((h, w), dtype=int)
    for r in range(h):
        for c in range(w):
            if rng.random() < density:
                arr[r, c] = rng.randint(1, colors)
    return arr


# isolated singles task family

def singles_pair(rng: random.Random, size: int = 6, nodes: int = 5) -> TaskInstance:
    """Isolated nodes of size 1 or 2 in colors 1..4; size-1 nodes turn black."""
    g = np.zeros((size, size), dtype=int)
    out = g.copy()
    used: set = set()
    placed = 0
    cells = [(r, c) for r in range(size) for c in range(size)]
    rng.shuffle(cells)
    singles = 0
    for r, c in cells:
        if placed >= nodes:
            break
        big = c + 1 < size and (singles > 0 and rng.random() < 0.4)
        pix = [(r, c), (r, c + 1)] if big else [(r, c)]
        ring = {(a + dr, b + dc) for a, b in pix for dr in (-1, 0, 1) for dc in (-1, 0, 1)}
        if ring & used:
            continue
        color = rng.randint(1, 4)
        for p in pix:
            g[p] = color
            out[p] = color if big else 0
        used |= set(pix)
        placed += 1
        singles += not big
    return TaskInstance(Grid(g), Grid(out))


def singles_task(seed: int = 0, train: int = 3) -> Task:
    rng = random.Random(seed)
    pairs = [singles_pair(rng) for _ in range(train + 1)]
    return Task(f"singles-{seed}", tuple(pairs[:train]), tuple(pairs[train:]))


def singles_expected(grid: Grid) -> np.ndarray:
    """Reference transformation for the family, written from the rule."""
    arr = grid.cells.astype(int)
    out = arr.copy()
    for comp in flood_components(arr, lambda v: v != 0, 4):
        if len(comp) == 1:
            (p,) = comp
            out[p] = 0
    return out


def mini_tasks() -> list[Path]:
    return sorted(MINI.glob("*.json"))
