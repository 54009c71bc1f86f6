"""Task files, grids and result reports.

Grids are immutable: the backing array is flagged read-only and every
transformation builds a new grid.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

import numpy as np

MAX_DIM = 30
NUM_COLORS = 10


class ArcError(Exception):
    pass


class ParseError(ArcError):
    pass


class ValidationError(ArcError):
    pass


class IoError(ArcError):
    pass


class Grid:
    """A 2D array of colors 0..9, 1..30 cells per side."""

    __slots__ = ("cells", "_key")

    def __init__(self, cells: Any):
        arr = np.array(cells, dtype=np.int64)
        if arr.ndim != 2:
            raise ValidationError(f"grid must be 2-dimensional, got shape {arr.shape}")
        h, w = arr.shape
        if not (1 <= h <= MAX_DIM and 1 <= w <= MAX_DIM):
            raise ValidationError(f"grid dimensions {h}x{w} outside 1..{MAX_DIM}")
        if arr.min() < 0 or arr.max() >= NUM_COLORS:
            raise ValidationError("cell value outside 0..9")
        arr = arr.astype(np.int8)
        arr.setflags(write=False)
        self.cells = arr
        self._key = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Grid":
        if not isinstance(rows, (list, tuple)) or not rows:
            raise ValidationError("grid must be a non-empty list of rows")
        width = None
        for row in rows:
            if not isinstance(row, (list, tuple)) or not row:
                raise ValidationError("grid rows must be non-empty lists")
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ValidationError("ragged grid rows")
            for v in row:
                if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                    raise ValidationError(f"non-integer cell {v!r}")
                if not 0 <= v < NUM_COLORS:
                    raise ValidationError(f"cell value {v} outside 0..9")
        return cls(rows)

    @property
    def height(self) -> int:
        return int(self.cells.shape[0])

    @property
    def width(self) -> int:
        return int(self.cells.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.height, self.width)

    def __getitem__(self, rc: tuple[int, int]) -> int:
        return int(self.cells[rc])

    def to_rows(self) -> list[list[int]]:
        return self.cells.astype(int).tolist()

    def colors(self) -> set[int]:
        return set(int(c) for c in np.unique(self.cells))

    def _hash_key(self):
        if self._key is None:
            self._key = (self.cells.shape, self.cells.tobytes())
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grid):
            return NotImplemented
        return grids_equal(self, other)

    def __hash__(self) -> int:
        return hash(self._hash_key())

    def __repr__(self) -> str:
        return f"Grid({self.height}x{self.width})"

    def pretty(self) -> str:
        return "\n".join("".join(str(v) for v in row) for row in self.to_rows())


def grids_equal(a: Grid, b: Grid) -> bool:
    return a.cells.shape == b.cells.shape and bool(np.array_equal(a.cells, b.cells))


@dataclass(frozen=True)
class TaskInstance:
    input: Grid
    output: Optional[Grid] = None


@dataclass(frozen=True)
class Task:
    id: str
    train: tuple[TaskInstance, ...]
    test: tuple[TaskInstance, ...]

    def __post_init__(self):
        if not self.train:
            raise ValidationError("task has no training pairs")
        if not self.test:
            raise ValidationError("task has no test pairs")
        if any(p.output is None for p in self.train):
            raise ValidationError("every training pair needs an output")

    def all_inputs(self) -> list[Grid]:
        return [p.input for p in self.train] + [p.input for p in self.test]

    def all_grids(self) -> list[Grid]:
        out = []
        for p in self.train + self.test:
            out.append(p.input)
            if p.output is not None:
                out.append(p.output)
        return out

    def colors(self) -> list[int]:
        found: set[int] = set()
        for g in self.all_grids():
            found |= g.colors()
        return sorted(found)


def _parse_pairs(raw: Any, key: str, need_output: bool) -> tuple[TaskInstance, ...]:
    if not isinstance(raw, list):
        raise ValidationError(f'"{key}" must be a list')
    pairs = []
    for i, item in enumerate(raw):
        if not isinstance(item, dict) or "input" not in item:
            raise ValidationError(f'{key}[{i}] lacks an "input" grid')
        inp = Grid.from_rows(item["input"])
        out = item.get("output")
        if out is None and need_output:
            raise ValidationError(f'{key}[{i}] lacks an "output" grid')
        pairs.append(TaskInstance(inp, Grid.from_rows(out) if out is not None else None))
    return tuple(pairs)


def task_from_dict(data: Any, task_id: str) -> Task:
    if not isinstance(data, dict) or "train" not in data or "test" not in data:
        raise ValidationError('task JSON needs top-level "train" and "test" lists')
    train = _parse_pairs(data["train"], "train", need_output=True)
    test = _parse_pairs(data["test"], "test", need_output=False)
    if not train:
        raise ValidationError("empty train list")
    return Task(task_id, train, test)


def task_to_dict(task: Task) -> dict:
    def pair(p: TaskInstance) -> dict:
        d = {"input": p.input.to_rows()}
        if p.output is not None:
            d["output"] = p.output.to_rows()
        return d

    return {"train": [pair(p) for p in task.train], "test": [pair(p) for p in task.test]}


def load_task(path: str | os.PathLike) -> Task:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return task_from_dict(data, path.stem)


def save_task(task: Task, path: str | os.PathLike) -> None:
    Path(path).write_text(json.dumps(task_to_dict(task)), encoding="utf-8")


@dataclass
class TaskResult:
    """One report record. ``program`` holds the pretty-printed solution."""

    task_id: str
    abstraction: Optional[str] = None
    n: Optional[int] = None
    v: Optional[int] = None
    pointers: list[str] = field(default_factory=list)
    solved_train: bool = False
    solved_test: bool = False
    expanded: int = 0
    wall_time: float = 0.0
    program: Optional[str] = None
    error: Optional[str] = None

    def __post_init__(self):
        # a test verdict only exists on top of a training solution
        if not self.solved_train:
            self.solved_test = False

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "TaskResult":
        return cls(**d)


TIMING_FIELDS = ("wall_time",)


def write_report(results: Iterable[TaskResult], path: str | os.PathLike) -> None:
    records = [r.to_dict() for r in results]
    try:
        Path(path).write_text(json.dumps(records, indent=2) + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write report {path}: {exc}") from exc


def load_report(path: str | os.PathLike) -> list[TaskResult]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise IoError(f"cannot read report {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return [TaskResult.from_dict(d) for d in data]
