"""Planning programs with pointers and their interpreter.

A program is an application section (searched) followed by a looping
section generated from the pointer list. The looping section enumerates
every combination of pointer values, re-entering line 0 for each one.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Optional, Sequence, Union

import numpy as np

from .actions import PREDICATE_EVAL, PLANNERS, AbstractState, ActionFailed
from .arc_io import Grid, ValidationError
from .domain import PREDICATES, SCHEMES, ObjectUniverse, ObjType, object_name, parse_object_name

T = ObjType


@dataclass(frozen=True)
class PointerDef:
    name: str
    type: ObjType


_PREFIX = {"no": T.NODE, "co": T.COLOR, "mo": T.M_DIRECTION}


def pointer(name: str) -> PointerDef:
    return PointerDef(name, _PREFIX[name[:2]])


POINTER_COMBOS: tuple[tuple[PointerDef, ...], ...] = tuple(
    tuple(pointer(n) for n in combo)
    for combo in (
        ("no1",),
        ("no1", "no2"),
        ("no1", "co1"),
        ("no1", "no2", "co1"),
        ("no1", "co1", "co2"),
        ("no1", "no2", "mo1"),
        ("no1", "no2", "no3"),
    )
)


@dataclass(frozen=True)
class Ptr:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const:
    type: ObjType
    value: Any

    def __str__(self) -> str:
        return object_name(self.type, self.value)


Arg = Union[Ptr, Const]


@dataclass(frozen=True)
class Act:
    scheme: str
    args: tuple

    def __str__(self) -> str:
        return f"{self.scheme}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class Test:
    __test__ = False  # keep pytest from collecting the instruction class

    predicate: str
    args: tuple

    def __str__(self) -> str:
        return f"test {self.predicate}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class TestTrue:
    __test__ = False

    def __str__(self) -> str:
        return "test(true)"


@dataclass(frozen=True)
class Goto:
    dest: int
    flag: bool

    def __str__(self) -> str:
        return f"goto({self.dest}, {'true' if self.flag else 'false'})"


@dataclass(frozen=True)
class Inc:
    ptr: str

    def __str__(self) -> str:
        return f"inc({self.ptr})"


@dataclass(frozen=True)
class Reset:
    ptr: str

    def __str__(self) -> str:
        return f"reset({self.ptr})"


@dataclass(frozen=True)
class End:
    def __str__(self) -> str:
        return "end"


Instruction = Union[Act, Test, TestTrue, Goto, Inc, Reset, End]
TESTS = (Test, TestTrue)


def generate_looping_section(pointers: Sequence[PointerDef]) -> tuple[Instruction, ...]:
    if not pointers:
        raise ValidationError("looping section needs at least one pointer")
    out: list[Instruction] = []
    for i, p in enumerate(pointers):
        out += [Inc(p.name), Goto(0, True)]
        if i < len(pointers) - 1:
            out.append(Reset(p.name))
    out.append(End())
    return tuple(out)


def validate_structure(application: Sequence[Instruction], complete: bool = True) -> bool:
    """Structural rules of the application section.

    A test is followed by a goto, line 0 is a test, and once a planning
    action appears the rest are planning actions. Gotos jump strictly
    forward; with ``complete`` they may target at most the looping start,
    otherwise the program is an open prefix and a trailing test is allowed.
    """
    n = len(application)
    seen_action = False
    for i, ins in enumerate(application):
        if isinstance(ins, (Inc, Reset, End)):
            return False
        if i == 0 and not isinstance(ins, TESTS):
            return False
        if seen_action and not isinstance(ins, Act):
            return False
        if isinstance(ins, Act):
            seen_action = True
        elif isinstance(ins, TESTS):
            if i + 1 < n:
                if not isinstance(application[i + 1], Goto):
                    return False
            elif complete:
                return False
        elif isinstance(ins, Goto):
            if ins.dest <= i or (complete and ins.dest > n):
                return False
    return True


@dataclass(frozen=True)
class PlanningProgram:
    application: tuple[Instruction, ...]
    pointers: tuple[PointerDef, ...]
    closed: bool = False

    @property
    def looping(self) -> tuple[Instruction, ...]:
        return generate_looping_section(self.pointers) if self.closed else ()

    @property
    def lines(self) -> tuple[Instruction, ...]:
        return self.application + self.looping

    def extend(self, ins: Instruction) -> "PlanningProgram":
        if self.closed:
            raise ValidationError("program already closed")
        return PlanningProgram(self.application + (ins,), self.pointers)

    def close(self) -> "PlanningProgram":
        return PlanningProgram(self.application, self.pointers, closed=True)

    def can_close(self) -> bool:
        return validate_structure(self.application, complete=True)

    def __str__(self) -> str:
        return format_program(self)


def novelty_rank(program: PlanningProgram) -> int:
    counts = Counter(ins for ins in program.application if isinstance(ins, Act))
    return max(counts.values(), default=0)


def action_lines(program: PlanningProgram) -> int:
    return sum(isinstance(ins, Act) for ins in program.application)


# ---------------------------------------------------------------- execution


class Outcome(str, Enum):
    SOLVED = "solved"
    TERMINATED = "terminated-not-goal"
    STEP_LIMIT = "step-limit"
    PARTIAL = "partial"


@dataclass
class ProgramState:
    state: AbstractState
    line: int = 0
    values: list = field(default_factory=list)
    y: bool = False
    done: bool = False


class PartialExecution(Exception):
    """Raised by :func:`step` on an unprogrammed line."""


def cardinalities(pointers: Sequence[PointerDef], universe: ObjectUniverse) -> list[int]:
    return [len(universe[p.type]) for p in pointers]


def termination_bound(program: PlanningProgram, universe: ObjectUniverse) -> int:
    prod = math.prod(max(1, k) for k in cardinalities(program.pointers, universe))
    return len(program.lines) * prod


def _binder(program: PlanningProgram, universe: ObjectUniverse) -> Callable[[Sequence, list], tuple]:
    index = {p.name: i for i, p in enumerate(program.pointers)}
    objs = [universe[p.type] for p in program.pointers]

    def bind(args: Sequence, values: list) -> tuple:
        out = []
        for a in args:
            if isinstance(a, Ptr):
                i = index[a.name]
                v = values[i]
                out.append(objs[i][v] if v < len(objs[i]) else None)
            else:
                out.append(a.value)
        return tuple(out)

    return bind


def initial_program_state(program: PlanningProgram, state: AbstractState) -> ProgramState:
    return ProgramState(state, 0, [0] * len(program.pointers), False)


def step(program: PlanningProgram, ps: ProgramState, universe: ObjectUniverse) -> ProgramState:
    """One transition, in place. Raises PartialExecution on an unprogrammed line."""
    lines = program.lines
    if ps.done:
        return ps
    if ps.line >= len(lines):
        raise PartialExecution(ps.line)
    ins = lines[ps.line]
    bind = _binder(program, universe)
    index = {p.name: i for i, p in enumerate(program.pointers)}
    cards = cardinalities(program.pointers, universe)
    if isinstance(ins, Act):
        run = PLANNERS[ins.scheme](ps.state, bind(ins.args, ps.values))
        if run is not None:
            try:
                run()
            except ActionFailed:
                pass
        ps.line += 1
    elif isinstance(ins, Test):
        ps.y = bool(PREDICATE_EVAL[ins.predicate](ps.state, bind(ins.args, ps.values)))
        ps.line += 1
    elif isinstance(ins, TestTrue):
        ps.y = True
        ps.line += 1
    elif isinstance(ins, Goto):
        ps.line = ins.dest if ps.y == ins.flag else ps.line + 1
    elif isinstance(ins, Inc):
        i = index[ins.ptr]
        if ps.values[i] + 1 < cards[i]:
            ps.values[i] += 1
            ps.y = True
        else:
            ps.y = False
        ps.line += 1
    elif isinstance(ins, Reset):
        ps.values[index[ins.ptr]] = 0
        ps.line += 1
    elif isinstance(ins, End):
        ps.done = True
    return ps


@dataclass
class RunResult:
    outcome: Outcome
    state: AbstractState
    steps: int

    @property
    def terminated(self) -> bool:
        return self.outcome in (Outcome.SOLVED, Outcome.TERMINATED)


def run(
    program: PlanningProgram,
    initial: AbstractState,
    universe: ObjectUniverse,
    goal: Optional[Grid] = None,
    max_steps: Optional[int] = None,
    on_entry: Optional[Callable[[tuple], None]] = None,
) -> RunResult:
    """Execute on a copy of ``initial``.

    ``on_entry`` is called with the pointer values each time line 0 starts
    executing. A run without a goal that reaches End reports TERMINATED.
    """
    state = initial.clone()
    code = _compile(program, universe)
    napp = len(program.application)
    closed = program.closed
    if max_steps is None:
        max_steps = 4 * termination_bound(program, universe)
    values = [0] * len(program.pointers)
    y = False
    line = 0
    steps = 0
    while True:
        if line >= napp and not closed:
            return RunResult(Outcome.PARTIAL, state, steps)
        if steps >= max_steps:
            return RunResult(Outcome.STEP_LIMIT, state, steps)
        op, a, b = code[line]
        steps += 1
        if line == 0 and on_entry is not None:
            on_entry(tuple(values))
        if op is _ACT:
            planned = a(state, b(values))
            if planned is not None:
                try:
                    planned()
                except ActionFailed:
                    pass
            line += 1
        elif op is _TEST:
            y = bool(a(state, b(values)))
            line += 1
        elif op is _TRUE:
            y = True
            line += 1
        elif op is _GOTO:
            line = a if y == b else line + 1
        elif op is _INC:
            if values[a] + 1 < b:
                values[a] += 1
                y = True
            else:
                y = False
            line += 1
        elif op is _RESET:
            values[a] = 0
            line += 1
        else:  # End
            if goal is not None and goal.shape == state.dims and np.array_equal(state.rendered, goal.cells):
                return RunResult(Outcome.SOLVED, state, steps)
            return RunResult(Outcome.TERMINATED, state, steps)


_ACT, _TEST, _TRUE, _GOTO, _INC, _RESET, _END = range(7)


def _arg_binder(args: Sequence, index: dict, objs: list) -> Callable[[list], tuple]:
    slots = []
    for a in args:
        if isinstance(a, Ptr):
            i = index[a.name]
            slots.append((i, objs[i]))
        else:
            slots.append((None, a.value))

    def bind(values: list) -> tuple:
        out = []
        for i, x in slots:
            if i is None:
                out.append(x)
            else:
                v = values[i]
                out.append(x[v] if v < len(x) else None)
        return tuple(out)

    return bind


def _compile(program: PlanningProgram, universe: ObjectUniverse) -> list[tuple]:
    """Lines as (opcode, a, b) triples, with pointer lookups resolved up front."""
    index = {p.name: i for i, p in enumerate(program.pointers)}
    objs = [universe[p.type] for p in program.pointers]
    cards = cardinalities(program.pointers, universe)
    code = []
    for ins in program.lines:
        cls = type(ins)
        if cls is Act:
            code.append((_ACT, PLANNERS[ins.scheme], _arg_binder(ins.args, index, objs)))
        elif cls is Test:
            code.append((_TEST, PREDICATE_EVAL[ins.predicate], _arg_binder(ins.args, index, objs)))
        elif cls is TestTrue:
            code.append((_TRUE, None, None))
        elif cls is Goto:
            code.append((_GOTO, ins.dest, ins.flag))
        elif cls is Inc:
            code.append((_INC, index[ins.ptr], cards[index[ins.ptr]]))
        elif cls is Reset:
            code.append((_RESET, index[ins.ptr], None))
        else:
            code.append((_END, None, None))
    return code


# ---------------------------------------------------------------- text format


def format_program(program: PlanningProgram, abstraction: Optional[str] = None) -> str:
    head = []
    if abstraction is not None:
        head.append(f"# abstraction: {abstraction}")
    head.append("# pointers: " + " ".join(f"{p.name}:{p.type.value}" for p in program.pointers))
    if not program.closed:
        head.append("# open")
    body = [f"{i}. {ins}" for i, ins in enumerate(program.lines)]
    return "\n".join(head + body) + "\n"


_LINE = re.compile(r"^(\d+)\.\s+(.*)$")
_CALL = re.compile(r"^([A-Za-z][\w-]*)\((.*)\)$")


def _parse_args(text: str, types: Sequence[ObjType], ptrs: dict[str, PointerDef]) -> tuple:
    parts = [a.strip() for a in text.split(",")] if text.strip() else []
    if len(parts) != len(types):
        raise ValidationError(f"expected {len(types)} arguments in {text!r}")
    out = []
    for a, t in zip(parts, types):
        if a in ptrs:
            if ptrs[a].type is not t:
                raise ValidationError(f"pointer {a} indexes {ptrs[a].type.value}, not {t.value}")
            out.append(Ptr(a))
        else:
            try:
                out.append(Const(t, parse_object_name(t, a)))
            except ValueError as exc:
                raise ValidationError(str(exc)) from exc
    return tuple(out)


def parse_program(text: str) -> tuple[PlanningProgram, Optional[str]]:
    """Inverse of :func:`format_program`; returns (program, abstraction)."""
    abstraction = None
    pointers: list[PointerDef] = []
    closed = True
    body: list[Instruction] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            key = key.strip()
            if key == "abstraction":
                abstraction = val.strip()
            elif key == "pointers":
                for item in val.split():
                    name, _, typ = item.partition(":")
                    pointers.append(PointerDef(name, ObjType(typ)))
            elif key == "open":
                closed = False
            continue
        m = _LINE.match(line)
        if not m:
            raise ValidationError(f"bad program line {raw!r}")
        if int(m.group(1)) != len(body):
            raise ValidationError(f"line numbers out of sequence at {raw!r}")
        body.append(_parse_instruction(m.group(2), {p.name: p for p in pointers}))
    if closed:
        loop = len(generate_looping_section(pointers)) if pointers else 0
        app, tail = tuple(body[: len(body) - loop]), tuple(body[len(body) - loop :])
        if tail != generate_looping_section(pointers):
            raise ValidationError("looping section does not match the pointer list")
    else:
        app = tuple(body)
    return PlanningProgram(app, tuple(pointers), closed), abstraction


def _parse_instruction(text: str, ptrs: dict[str, PointerDef]) -> Instruction:
    if text == "end":
        return End()
    if text == "test(true)":
        return TestTrue()
    if text.startswith("test "):
        m = _CALL.match(text[5:].strip())
        if not m or m.group(1) not in PREDICATES:
            raise ValidationError(f"bad test {text!r}")
        return Test(m.group(1), _parse_args(m.group(2), PREDICATES[m.group(1)].params, ptrs))
    m = _CALL.match(text)
    if not m:
        raise ValidationError(f"bad instruction {text!r}")
    head, inner = m.group(1), m.group(2)
    if head == "goto":
        dest, flag = [a.strip() for a in inner.split(",")]
        if flag not in ("true", "false"):
            raise ValidationError(f"bad goto flag in {text!r}")
        return Goto(int(dest), flag == "true")
    if head == "inc":
        return Inc(inner.strip())
    if head == "reset":
        return Reset(inner.strip())
    if head in SCHEMES:
        return Act(head, _parse_args(inner, SCHEMES[head].params, ptrs))
    raise ValidationError(f"unknown instruction {text!r}")
