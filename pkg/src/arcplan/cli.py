"""Command-line entry point: solve, abstract, emit-pddl, replay."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .abstraction import AbstractionKind, abstract
from .arc_io import ArcError, Task, TaskResult, load_report, load_task, write_report
from .domain import EmptyDomain, build_domain
from .pddl import write_pddl
from .program import format_program, parse_program
from .synthesis import ABSTRACTION_ORDER, MAX_LINES, MAX_NOVELTY, MIN_LINES, run_on_task, schedule, verify

log = logging.getLogger("arcplan")


@dataclass(frozen=True)
class RunConfig:
    tasks: tuple[Path, ...]
    time_limit: float = 60.0
    max_lines: int = MAX_LINES
    max_novelty: int = MAX_NOVELTY
    abstractions: tuple[AbstractionKind, ...] = ABSTRACTION_ORDER
    emit_pddl: Optional[Path] = None
    dump_abstractions: Optional[Path] = None
    report: Optional[Path] = None
    workers: int = 1
    task_budget: Optional[float] = None
    work_limit: Optional[int] = None


class UsageError(Exception):
    pass


def _kinds(text: Optional[str]) -> tuple[AbstractionKind, ...]:
    if not text:
        return ABSTRACTION_ORDER
    out = []
    for name in text.split(","):
        name = name.strip().upper()
        try:
            out.append(AbstractionKind(name))
        except ValueError:
            raise UsageError(f"unknown abstraction {name!r}; choose from {', '.join(k.value for k in AbstractionKind)}")
    return tuple(out)


def _task_paths(args) -> tuple[Path, ...]:
    paths = [Path(p) for p in (args.task or [])]
    if args.tasks_dir:
        d = Path(args.tasks_dir)
        if not d.is_dir():
            raise UsageError(f"--tasks-dir {d} is not a directory")
        paths += sorted(d.glob("*.json"))
    if not paths:
        raise UsageError("give --task or --tasks-dir")
    missing = [p for p in paths if not p.is_file()]
    if missing:
        raise UsageError(f"no such task file: {missing[0]}")
    return tuple(paths)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--task", action="append", help="task JSON file (repeatable)")
    p.add_argument("--tasks-dir", help="directory of task JSON files")
    p.add_argument("--abstractions", help="comma-separated allow-list, e.g. CC4,PIXELS")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arcplan", description="Solve ARC tasks by synthesizing planning programs.")
    parser.add_argument("--log-level", default="warning", choices=["debug", "info", "warning", "error"])
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="search for a program per task and write a report")
    _add_common(solve)
    solve.add_argument("--report", help="report JSON path (default: stdout)")
    solve.add_argument("--time-limit", type=float, default=60.0, help="seconds per configuration")
    solve.add_argument("--task-budget", type=float, help="seconds per task across all configurations")
    solve.add_argument(
        "--work-limit", type=int, help="per-configuration cap on search work (interpreter steps); reproducible, unlike --time-limit"
    )
    solve.add_argument("--max-lines", type=int, default=MAX_LINES)
    solve.add_argument("--max-novelty", type=int, default=MAX_NOVELTY)
    solve.add_argument("--emit-pddl", metavar="DIR")
    solve.add_argument("--dump-abstractions", metavar="DIR")
    solve.add_argument("--workers", type=int, default=1)

    ab = sub.add_parser("abstract", help="dump abstraction graphs as JSON")
    _add_common(ab)
    ab.add_argument("--dump-abstractions", metavar="DIR", help="output directory (default: stdout)")

    em = sub.add_parser("emit-pddl", help="write domain and instance files")
    _add_common(em)
    em.add_argument("--emit-pddl", metavar="DIR", required=True)

    rp = sub.add_parser("replay", help="run a stored program on a task")
    rp.add_argument("--task", action="append", help="task JSON file (repeatable)")
    rp.add_argument("--tasks-dir", help="directory of task JSON files")
    src = rp.add_mutually_exclusive_group(required=True)
    src.add_argument("--program", help="program text file")
    src.add_argument("--report", help="report JSON holding the program for the task")
    rp.add_argument("--abstraction", help="abstraction to use when the program text has none")
    return parser


# ---------------------------------------------------------------- subcommands


def dump_abstractions(task: Task, kinds: Sequence[AbstractionKind]) -> dict:
    out = {}
    for k in kinds:
        out[k.value] = {
            "train": [
                {"input": abstract(p.input, k).to_dict(), "output": abstract(p.output, k).to_dict()} for p in task.train
            ],
            "test": [{"input": abstract(p.input, k).to_dict()} for p in task.test],
        }
    return out


def _write_json(path: Path, data) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")


def solve_one(path: Path, cfg: RunConfig) -> TaskResult:
    start = time.monotonic()
    try:
        task = load_task(path)
    except ArcError as exc:
        return TaskResult(path.stem, error=f"{type(exc).__name__}: {exc}")
    try:
        if cfg.dump_abstractions is not None:
            _write_json(cfg.dump_abstractions / f"{task.id}.json", dump_abstractions(task, cfg.abstractions))
        res = schedule(
            task,
            kinds=cfg.abstractions,
            max_n=cfg.max_lines,
            max_v=cfg.max_novelty,
            time_limit=cfg.time_limit,
            task_budget=cfg.task_budget,
            work_limit=cfg.work_limit,
        )
        record = TaskResult(task.id, expanded=res.expanded)
        if res.program is not None:
            c = res.config
            v = verify(res.program, c, task)
            record = TaskResult(
                task.id,
                abstraction=c.abstraction.value,
                n=c.n,
                v=c.v,
                pointers=[p.name for p in c.pointers],
                solved_train=v.train_solved,
                solved_test=v.test_solved,
                expanded=res.expanded,
                program=format_program(res.program, c.abstraction.value),
            )
        if cfg.emit_pddl is not None:
            _emit_for_solve(task, res.config.abstraction if res.config else None, cfg)
    except ArcError as exc:
        record = TaskResult(task.id, error=f"{type(exc).__name__}: {exc}")
    record.wall_time = round(time.monotonic() - start, 3)
    return record


def _emit_for_solve(task: Task, kind: Optional[AbstractionKind], cfg: RunConfig) -> None:
    kinds = [kind] if kind is not None else list(cfg.abstractions)
    for k in kinds:
        try:
            model, train, test = build_domain(task, k)
        except EmptyDomain:
            continue
        write_pddl(model, train + test, cfg.emit_pddl / task.id)
        return


def cmd_solve(args) -> int:
    if not MIN_LINES <= args.max_lines <= MAX_LINES:
        raise UsageError(f"--max-lines must be within {MIN_LINES}..{MAX_LINES}")
    if not 1 <= args.max_novelty <= MAX_NOVELTY:
        raise UsageError(f"--max-novelty must be within 1..{MAX_NOVELTY}")
    if args.workers < 1:
        raise UsageError("--workers must be positive")
    if args.time_limit <= 0:
        raise UsageError("--time-limit must be positive")
    if args.work_limit is not None and args.work_limit <= 0:
        raise UsageError("--work-limit must be positive")
    cfg = RunConfig(
        tasks=_task_paths(args),
        time_limit=args.time_limit,
        max_lines=args.max_lines,
        max_novelty=args.max_novelty,
        abstractions=_kinds(args.abstractions),
        emit_pddl=Path(args.emit_pddl) if args.emit_pddl else None,
        dump_abstractions=Path(args.dump_abstractions) if args.dump_abstractions else None,
        report=Path(args.report) if args.report else None,
        workers=args.workers,
        task_budget=args.task_budget,
        work_limit=args.work_limit,
    )
    if cfg.workers == 1 or len(cfg.tasks) == 1:
        results = [solve_one(p, cfg) for p in cfg.tasks]
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(solve_one, cfg.tasks, [cfg] * len(cfg.tasks)))
    for r in results:
        status = "error" if r.error else ("solved" if r.solved_test else "train-only" if r.solved_train else "unsolved")
        log.info("%s: %s", r.task_id, status)
    if cfg.report is not None:
        write_report(results, cfg.report)
    else:
        json.dump([r.to_dict() for r in results], sys.stdout, indent=2)
        sys.stdout.write("\n")
    return 1 if any(r.error for r in results) else 0


def cmd_abstract(args) -> int:
    kinds = _kinds(args.abstractions)
    for path in _task_paths(args):
        task = load_task(path)
        data = dump_abstractions(task, kinds)
        if args.dump_abstractions:
            _write_json(Path(args.dump_abstractions) / f"{task.id}.json", data)
        else:
            json.dump({task.id: data}, sys.stdout)
            sys.stdout.write("\n")
    return 0


def cmd_emit(args) -> int:
    kinds = _kinds(args.abstractions) if args.abstractions else (AbstractionKind.CC4,)
    out = Path(args.emit_pddl)
    for path in _task_paths(args):
        task = load_task(path)
        for k in kinds:
            try:
                model, train, test = build_domain(task, k)
            except EmptyDomain as exc:
                log.warning("%s", exc)
                continue
            target = out / task.id if len(kinds) == 1 else out / task.id / k.value
            write_pddl(model, train + test, target)
    return 0


def cmd_replay(args) -> int:
    paths = _task_paths(args)
    records = {r.task_id: r for r in load_report(args.report)} if args.report else {}
    text = Path(args.program).read_text(encoding="utf-8") if args.program else None
    out = []
    for path in paths:
        task = load_task(path)
        if text is None:
            rec = records.get(task.id)
            if rec is None or rec.program is None:
                raise UsageError(f"report has no program for task {task.id}")
            prog_text = rec.program
        else:
            prog_text = text
        program, kind = parse_program(prog_text)
        kind = kind or args.abstraction
        if kind is None:
            raise UsageError("program text names no abstraction; pass --abstraction")
        train, test = run_on_task(program, AbstractionKind(kind.upper()), task)
        out.append(
            {
                "task_id": task.id,
                "solved_train": all(r.outcome.value == "solved" for r in train),
                "solved_test": all(r.outcome.value == "solved" for r in test),
                "test_predictions": [r.state.grid.to_rows() for r in test],
            }
        )
    json.dump(out, sys.stdout)
    sys.stdout.write("\n")
    return 0


COMMANDS = {"solve": cmd_solve, "abstract": cmd_abstract, "emit-pddl": cmd_emit, "replay": cmd_replay}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level.upper()),
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"arcplan: error: {exc}", file=sys.stderr)
        return 2
    except ArcError as exc:
        print(f"arcplan: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        log.exception("internal error")
        print(f"arcplan: internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
