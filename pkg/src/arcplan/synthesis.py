"""Best-first program search and the configuration schedule.

The search builds the application section one line at a time. Open
programs are scored by executing them up to the first unprogrammed line;
closed programs (application plus looping section) are only ever checked
for being a solution, at the moment they are generated.
"""

from __future__ import annotations

import heapq
import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from .abstraction import AbstractionKind, dedupe_abstractions
from .actions import AbstractState
from .arc_io import Grid, Task
from .domain import (
    FIXED_OBJECTS,
    DomainModel,
    EmptyDomain,
    PREDICATES,
    InstanceDescription,
    ObjType,
    build_domain,
    describe_instances,
)
from .program import (
    POINTER_COMBOS,
    TESTS,
    Act,
    Const,
    End,
    Goto,
    Instruction,
    Outcome,
    PlanningProgram,
    PointerDef,
    Ptr,
    Test,
    TestTrue,
    action_lines,
    novelty_rank,
    run,
)

log = logging.getLogger("arcplan.search")

K = AbstractionKind
T = ObjType

# (kind, complexity rank); kinds of equal rank keep this listing order
ABSTRACTION_RANKS: tuple[tuple[AbstractionKind, int], ...] = (
    (K.PIXELS, 0),
    (K.IMAGE, 0),
    (K.CC4, 1),
    (K.CC4_B, 1),
    (K.CC4_ALL, 1),
    (K.CC8, 2),
    (K.CC8_B, 2),
    (K.CC8_ALL, 2),
    (K.SAME_COLOR, 3),
    (K.MULTI_COLOR_4, 4),
    (K.MULTI_COLOR_8, 4),
    (K.VERTICAL, 5),
    (K.HORIZONTAL, 5),
    (K.MAX_RECT, 6),
    (K.BG_RECT, 6),
    (K.CC4_SPA, 7),
    (K.CC4_CON, 7),
    (K.CC8_SPA, 7),
    (K.CC8_CON, 7),
)
RANK = dict(ABSTRACTION_RANKS)
ABSTRACTION_ORDER = tuple(k for k, _ in ABSTRACTION_RANKS)

MIN_LINES, MAX_LINES, MAX_NOVELTY = 3, 10, 3

# the transition into the looping section, as a candidate "instruction"
CLOSE = End()


def legal_novelty(n: int) -> range:
    if n <= 3:
        return range(1, 2)
    if n == 4:
        return range(1, 3)
    return range(1, 4)


@dataclass(frozen=True)
class ParameterConfig:
    abstraction: AbstractionKind
    pointers: tuple[PointerDef, ...]
    n: int
    v: int
    time_limit: float = 60.0
    # optional cap on search work (see StepMeter); unlike the clock it
    # gives the same answer on any machine
    work_limit: Optional[int] = None

    def __post_init__(self):
        if not MIN_LINES <= self.n <= MAX_LINES:
            raise ValueError(f"n={self.n} outside {MIN_LINES}..{MAX_LINES}")
        if self.v not in legal_novelty(self.n):
            raise ValueError(f"v={self.v} not allowed with n={self.n}")

    def label(self) -> str:
        z = ",".join(p.name for p in self.pointers)
        return f"{self.abstraction.value} Z=({z}) n={self.n} v={self.v}"


def configs(
    kinds: Sequence[AbstractionKind],
    max_n: int = MAX_LINES,
    max_v: int = MAX_NOVELTY,
    time_limit: float = 60.0,
    min_n: int = MIN_LINES,
    combos: Sequence[tuple[PointerDef, ...]] = POINTER_COMBOS,
    work_limit: Optional[int] = None,
) -> list[ParameterConfig]:
    """All configs in schedule order: (abstraction rank, |Z|, n, v)."""
    order = {k: i for i, k in enumerate(ABSTRACTION_ORDER)}
    out = []
    for kind in kinds:
        for ci, combo in enumerate(combos):
            for n in range(min_n, max_n + 1):
                for v in legal_novelty(n):
                    if v <= max_v:
                        out.append(((RANK[kind], len(combo), n, v, order[kind], ci), ParameterConfig(kind, combo, n, v, time_limit, work_limit)))
    out.sort(key=lambda kc: kc[0])
    return [c for _, c in out]


# ---------------------------------------------------------------- candidates

_ACTION_CONSTANTS = {T.M_DIRECTION, T.STEP, T.ROTATION, T.F_DIRECTION}


def _slot_options(ptype: ObjType, pointers: Sequence[PointerDef], consts: Iterable) -> list:
    opts: list = [Ptr(p.name) for p in pointers if p.type is ptype]
    opts += [Const(ptype, v) for v in consts]
    return opts


def _distinct_nodes(args: tuple) -> bool:
    nodes = [a for a in args if isinstance(a, Ptr) and a.name.startswith("no")]
    return len(nodes) == len(set(nodes))


def test_candidates(model: DomainModel, pointers: Sequence[PointerDef]) -> list[Instruction]:
    out: list[Instruction] = [TestTrue()]
    for pat in model.test_patterns:
        params = PREDICATES[pat.predicate].params
        slots = [
            _slot_options(t, pointers, () if t is T.NODE else consts)
            for t, consts in zip(params, pat.constants)
        ]
        for args in itertools.product(*slots):
            if _distinct_nodes(args):
                out.append(Test(pat.predicate, args))
    return out


def action_candidates(model: DomainModel, pointers: Sequence[PointerDef]) -> list[Instruction]:
    out: list[Instruction] = []
    for scheme in model.schemes:
        slots = []
        for t in scheme.params:
            if t is T.NODE:
                consts = ()
            elif t is T.COLOR:
                consts = model.universe[T.COLOR]
            elif t in _ACTION_CONSTANTS:
                consts = FIXED_OBJECTS[t]
            else:
                consts = ()
            slots.append(_slot_options(t, pointers, consts))
        for args in itertools.product(*slots):
            if not _distinct_nodes(args):
                continue
            if scheme.name == "UpdateColor" and args[1] == args[2]:
                continue
            out.append(Act(scheme.name, args))
    return out


class CandidateGenerator:
    """Structure-legal next lines for a given model, pointer set and n."""

    def __init__(self, model: DomainModel, pointers: Sequence[PointerDef], n: int):
        self.n = n
        self.tests = test_candidates(model, pointers)
        self.actions = action_candidates(model, pointers)

    def __call__(self, program: PlanningProgram) -> list[Instruction]:
        app = program.application
        i = len(app)
        n = self.n
        out: list[Instruction] = []
        last = app[-1] if app else None
        if i == 0:
            return list(self.tests)
        if isinstance(last, TESTS):
            if i < n:
                out = [Goto(d, f) for d in range(i + 1, n + 1) for f in (False, True)]
            return out
        if isinstance(last, Goto) and i + 1 < n:
            out += self.tests
        if i < n:
            out += self.actions
        if program.can_close():
            out.append(CLOSE)
        return out


def candidate_instructions(model: DomainModel, program: PlanningProgram, n: int) -> list[Instruction]:
    """Next-line candidates; :data:`CLOSE` marks closing the application."""
    return CandidateGenerator(model, program.pointers, n)(program)


# ---------------------------------------------------------------- evaluation


@dataclass
class PreparedInstance:
    initial: AbstractState
    universe: object
    goal: Optional[Grid]
    init_cells: np.ndarray

    @classmethod
    def of(cls, inst: InstanceDescription) -> "PreparedInstance":
        st = AbstractState.from_graph(inst.graph)
        return cls(st, inst.universe, inst.goal, inst.input.cells)


def pixel_heuristic(reached: np.ndarray, init: np.ndarray, goal: np.ndarray) -> int:
    if reached.shape != goal.shape:
        return 2 * goal.size
    miss = reached != goal
    return int(miss.sum() + (miss & (reached != init)).sum())


RUN_COST = 80  # setting up one execution costs about as much as 80 steps


class StepMeter:
    """Machine-independent measure of search work: interpreter steps plus
    RUN_COST per program execution."""

    def __init__(self):
        self.work = 0

    def charge(self, steps: int) -> None:
        self.work += steps + RUN_COST


def h_p(program: PlanningProgram, instances: Sequence[PreparedInstance], meter: Optional[StepMeter] = None) -> int:
    total = 0
    for inst in instances:
        res = run(program, inst.initial, inst.universe, inst.goal)
        if meter is not None:
            meter.charge(res.steps)
        total += pixel_heuristic(res.state.rendered, inst.init_cells, inst.goal.cells)
    return total


def solves(program: PlanningProgram, instances: Sequence[PreparedInstance]) -> bool:
    return all(run(program, i.initial, i.universe, i.goal).outcome is Outcome.SOLVED for i in instances)


@dataclass
class SearchResult:
    program: Optional[PlanningProgram]
    expanded: int = 0
    generated: int = 0
    best_h: Optional[int] = None
    timed_out: bool = False
    work: int = 0


def search(
    model: DomainModel,
    instances: Sequence[InstanceDescription],
    config: ParameterConfig,
    deadline: Optional[float] = None,
    clock: Callable[[], float] = time.monotonic,
) -> SearchResult:
    """Best-first search ordered by (h_p, -action lines, insertion order).

    Stops with ``timed_out`` set when the deadline passes or the config's
    work budget is spent.
    """
    if deadline is None:
        deadline = clock() + config.time_limit
    prepared = [PreparedInstance.of(i) for i in instances]
    gen = CandidateGenerator(model, config.pointers, config.n)
    root = PlanningProgram((), config.pointers)
    seq = itertools.count()
    meter = StepMeter()
    budget = config.work_limit
    h0 = h_p(root, prepared, meter)
    heap = [(h0, 0, next(seq), root)]
    res = SearchResult(None, best_h=h0)
    # first training instance that rejected the last closed candidate
    order = list(range(len(prepared)))
    while heap:
        _, _, _, prog = heapq.heappop(heap)
        res.expanded += 1
        for ins in gen(prog):
            if clock() > deadline or (budget is not None and meter.work >= budget):
                res.timed_out = True
                res.work = meter.work
                return res
            if ins is CLOSE:
                child = prog.close()
            else:
                child = prog.extend(ins)
                if novelty_rank(child) > config.v:
                    continue
            res.generated += 1
            if child.closed:
                if _closed_solves(child, prepared, order, meter):
                    res.program = child
                    res.work = meter.work
                    return res
                continue
            h = h_p(child, prepared, meter)
            if res.best_h is None or h < res.best_h:
                res.best_h = h
            heapq.heappush(heap, (h, -action_lines(child), next(seq), child))
    res.work = meter.work
    return res


def _closed_solves(
    program: PlanningProgram, prepared: Sequence[PreparedInstance], order: list[int], meter: StepMeter
) -> bool:
    for k, idx in enumerate(order):
        inst = prepared[idx]
        r = run(program, inst.initial, inst.universe, inst.goal)
        meter.charge(r.steps)
        if r.outcome is not Outcome.SOLVED:
            # try the discriminating instance first next time
            order.insert(0, order.pop(k))
            return False
    return True


# ---------------------------------------------------------------- schedule


@dataclass
class Attempt:
    config: ParameterConfig
    expanded: int
    best_h: Optional[int]
    solved: bool
    timed_out: bool
    skipped: Optional[str] = None
    work: int = 0


@dataclass
class ScheduleResult:
    program: Optional[PlanningProgram]
    config: Optional[ParameterConfig]
    attempts: list[Attempt] = field(default_factory=list)

    @property
    def expanded(self) -> int:
        return sum(a.expanded for a in self.attempts)


def schedule(
    task: Task,
    kinds: Optional[Sequence[AbstractionKind]] = None,
    max_n: int = MAX_LINES,
    max_v: int = MAX_NOVELTY,
    time_limit: float = 60.0,
    task_budget: Optional[float] = None,
    combos: Sequence[tuple[PointerDef, ...]] = POINTER_COMBOS,
    clock: Callable[[], float] = time.monotonic,
    work_limit: Optional[int] = None,
) -> ScheduleResult:
    """Try configs in order and return the first solution found."""
    out = ScheduleResult(None, None)
    if any(p.input.shape != p.output.shape for p in task.train):
        log.info("%s: output dimensions differ from input, no program can apply", task.id)
        return out
    kinds = [AbstractionKind(k) for k in (kinds or ABSTRACTION_ORDER)]
    kinds = dedupe_abstractions(task, kinds)
    task_deadline = clock() + task_budget if task_budget is not None else None
    models: dict[AbstractionKind, Optional[tuple]] = {}
    for cfg in configs(kinds, max_n, max_v, time_limit, combos=combos, work_limit=work_limit):
        now = clock()
        if task_deadline is not None and now >= task_deadline:
            log.info("%s: task budget exhausted", task.id)
            break
        if cfg.abstraction not in models:
            try:
                model, train, _ = build_domain(task, cfg.abstraction)
                models[cfg.abstraction] = (model, train)
            except EmptyDomain as exc:
                log.info("%s: %s", task.id, exc)
                models[cfg.abstraction] = None
        built = models[cfg.abstraction]
        if built is None:
            out.attempts.append(Attempt(cfg, 0, None, False, False, skipped="empty domain"))
            continue
        model, train = built
        deadline = now + cfg.time_limit
        if task_deadline is not None:
            deadline = min(deadline, task_deadline)
        res = search(model, train, cfg, deadline=deadline, clock=clock)
        solved = res.program is not None
        out.attempts.append(Attempt(cfg, res.expanded, res.best_h, solved, res.timed_out, work=res.work))
        log.info("%s: %s expanded=%d best_h=%s%s", task.id, cfg.label(), res.expanded, res.best_h, " solved" if solved else "")
        if solved:
            out.program, out.config = res.program, cfg
            return out
    return out


@dataclass(frozen=True)
class Verification:
    train_solved: bool
    test_solved: bool


def run_on_task(program: PlanningProgram, kind: AbstractionKind, task: Task):
    """Execute ``program`` on every pair; returns (train results, test results)."""
    _, train, test = describe_instances(task, kind)
    results = []
    for group in (train, test):
        rs = []
        for inst in group:
            st = AbstractState.from_graph(inst.graph)
            rs.append(run(program, st, inst.universe, inst.goal))
        results.append(rs)
    return results[0], results[1]


def verify(program: PlanningProgram, config: ParameterConfig, task: Task) -> Verification:
    train, test = run_on_task(program, config.abstraction, task)
    train_ok = all(r.outcome is Outcome.SOLVED for r in train)
    test_ok = train_ok and all(r.outcome is Outcome.SOLVED for r in test)
    return Verification(train_ok, test_ok)
