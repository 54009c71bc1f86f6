"""PDDL text for domain models and instances, plus a small reader.

External functions appear as ``@name`` atoms in preconditions and effects.
The reader is only meant for files of the shape emitted here (typing and
external-function hooks, no other requirements).
"""

from __future__ import annotations

import os
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

from .domain import (
    ActionSchemeDef,
    DomainModel,
    InstanceDescription,
    ObjType,
    PredicateDef,
    goal_atoms,
    initial_atoms,
    object_name,
)

T = ObjType
SExpr = Union[str, list]


class PddlSyntaxError(Exception):
    pass


# ---------------------------------------------------------------- s-expressions

_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def tokenize(text: str) -> list[str]:
    text = re.sub(r";[^\n]*", "", text)
    return _TOKEN.findall(text)


def parse_sexpr(text: str) -> SExpr:
    tokens = tokenize(text)
    if not tokens:
        raise PddlSyntaxError("empty input")
    pos = 0

    def read() -> SExpr:
        nonlocal pos
        if pos >= len(tokens):
            raise PddlSyntaxError("unexpected end of input")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            out = []
            while True:
                if pos >= len(tokens):
                    raise PddlSyntaxError("unbalanced parentheses")
                if tokens[pos] == ")":
                    pos += 1
                    return out
                out.append(read())
        if tok == ")":
            raise PddlSyntaxError("unexpected ')'")
        return tok

    expr = read()
    if pos != len(tokens):
        raise PddlSyntaxError("trailing tokens after top-level expression")
    return expr


def to_text(expr: SExpr) -> str:
    if isinstance(expr, str):
        return expr
    return "(" + " ".join(to_text(e) for e in expr) + ")"


# ---------------------------------------------------------------- emission

_VAR_BASE = {
    T.NODE: "n",
    T.PIXEL: "p",
    T.COLOR: "c",
    T.SIZE: "z",
    T.STEP: "s",
    T.ROTATION: "r",
    T.F_DIRECTION: "f",
    T.M_DIRECTION: "d",
    T.SHAPE: "sh",
}


def param_vars(types: Sequence[ObjType]) -> list[str]:
    counts = Counter(types)
    seen: Counter = Counter()
    out = []
    for t in types:
        seen[t] += 1
        base = _VAR_BASE[t]
        out.append(f"?{base}{seen[t]}" if counts[t] > 1 else f"?{base}")
    return out


def typed_list(names: Sequence[str], types: Sequence) -> list[str]:
    """Group consecutive names sharing a type: ``a b - t1 c - t2``."""
    out: list[str] = []
    i = 0
    while i < len(names):
        j = i
        while j + 1 < len(names) and types[j + 1] == types[i]:
            j += 1
        out += list(names[i : j + 1]) + ["-", str(types[i])]
        i = j + 1
    return out


def precondition(scheme: ActionSchemeDef) -> SExpr:
    vs = param_vars(scheme.params)
    name = scheme.name
    if name == "UpdateColor":
        return ["node-color", vs[0], vs[1]]
    if name in ("MoveNode1", "MoveNode2", "ExtendNode"):
        return ["exists", ["?d", "-", "m-direction"], ["node-spatial", vs[0], vs[1], "?d"]]
    if name in ("CopyColor", "SwapColor"):
        return ["not", ["=", vs[0], vs[1]]]
    if name == "HollowNode":
        return ["or", ["node-shape", vs[0], "square"], ["node-shape", vs[0], "rectangle"]]
    if name == "FillNode":
        return ["and", ["node-shape", vs[0], "unknown"], [scheme.precondition] + vs]
    if scheme.precondition:
        return [scheme.precondition] + vs
    return ["and"]


def effect(scheme: ActionSchemeDef) -> SExpr:
    return [scheme.effect] + param_vars(scheme.params)


def _constants(model: DomainModel) -> list[str]:
    names, types = [], []
    for t in (T.COLOR, T.SIZE, T.STEP, T.ROTATION, T.F_DIRECTION, T.M_DIRECTION, T.SHAPE):
        for v in model.universe[t]:
            names.append(object_name(t, v))
            types.append(t.value)
    return typed_list(names, types)


def _predicate_decl(p: PredicateDef) -> list:
    return [p.name] + typed_list(param_vars(p.params), [t.value for t in p.params])


def domain_sexpr(model: DomainModel) -> list:
    out: list = [
        "define",
        ["domain", model.name],
        [":requirements", ":strips", ":typing"],
        [":types"] + [t.value for t in ObjType],
        [":constants"] + _constants(model),
        [":predicates"] + [_predicate_decl(p) for p in model.predicates],
    ]
    for s in model.schemes:
        vs = param_vars(s.params)
        out.append(
            [
                ":action",
                s.name,
                ":parameters",
                typed_list(vs, [t.value for t in s.params]),
                ":precondition",
                precondition(s),
                ":effect",
                effect(s),
            ]
        )
    return out


def _atom_text(atom: tuple) -> str:
    return "(" + " ".join(atom) + ")"


def emit_domain(model: DomainModel) -> str:
    d = domain_sexpr(model)
    lines = [f"(define {to_text(d[1])}", f"  {to_text(d[2])}", f"  {to_text(d[3])}"]
    lines.append("  (:constants " + " ".join(d[4][1:]) + ")")
    lines.append("  (:predicates")
    lines += [f"    {to_text(p)}" for p in d[5][1:]]
    lines.append("  )")
    for a in d[6:]:
        lines.append(f"  (:action {a[1]}")
        lines.append(f"    :parameters {to_text(a[3])}")
        lines.append(f"    :precondition {to_text(a[5])}")
        lines.append(f"    :effect {to_text(a[7])})")
    lines.append(")")
    return "\n".join(lines) + "\n"


def instance_objects(inst: InstanceDescription) -> list[str]:
    names, types = [], []
    for t in (T.NODE, T.PIXEL):
        for v in inst.universe[t]:
            names.append(object_name(t, v))
            types.append(t.value)
    return typed_list(names, types)


def emit_instance(model: DomainModel, inst: InstanceDescription) -> str:
    lines = [f"(define (problem {inst.name.lower()})", f"  (:domain {model.name})"]
    lines.append("  (:objects " + " ".join(instance_objects(inst)) + ")")
    lines.append("  (:init")
    lines += [f"    {_atom_text(a)}" for a in initial_atoms(model, inst)]
    lines.append("  )")
    goal = goal_atoms(inst)
    lines.append("  (:goal (and")
    lines += [f"    {_atom_text(a)}" for a in goal]
    lines.append("  ))")
    lines.append(")")
    return "\n".join(lines) + "\n"


def emit_pddl(model: DomainModel, instances: Sequence[InstanceDescription]) -> tuple[str, dict[str, str]]:
    return emit_domain(model), {inst.name.lower(): emit_instance(model, inst) for inst in instances}


def write_pddl(model: DomainModel, instances: Sequence[InstanceDescription], directory: str | os.PathLike) -> list[Path]:
    base = Path(directory)
    base.mkdir(parents=True, exist_ok=True)
    dom, insts = emit_pddl(model, instances)
    paths = [base / "domain.pddl"]
    paths[0].write_text(dom, encoding="utf-8")
    for name, text in insts.items():
        p = base / f"{name}.pddl"
        p.write_text(text, encoding="utf-8")
        paths.append(p)
    return paths


# ---------------------------------------------------------------- reading


@dataclass(frozen=True)
class ParsedAction:
    name: str
    param_types: tuple[str, ...]
    precondition: SExpr
    effect: SExpr


@dataclass(frozen=True)
class ParsedDomain:
    name: str
    types: tuple[str, ...]
    constants: dict  # name -> type
    predicates: dict  # name -> tuple of types
    actions: dict  # name -> ParsedAction


@dataclass(frozen=True)
class ParsedProblem:
    name: str
    domain: str
    objects: dict  # name -> type
    init: frozenset
    goal: frozenset


def parse_typed_list(items: Sequence[SExpr], known_types=None) -> list[tuple[str, str]]:
    out: list[tuple[str, str]] = []
    pending: list[str] = []
    i = 0
    while i < len(items):
        tok = items[i]
        if not isinstance(tok, str):
            raise PddlSyntaxError(f"expected a name, found {to_text(tok)}")
        if tok == "-":
            if i + 1 >= len(items) or not isinstance(items[i + 1], str) or not pending:
                raise PddlSyntaxError("dangling type marker")
            typ = items[i + 1]
            if known_types is not None and typ not in known_types:
                raise PddlSyntaxError(f"unknown type {typ}")
            out += [(n, typ) for n in pending]
            pending = []
            i += 2
            continue
        pending.append(tok)
        i += 1
    if pending:
        out += [(n, "object") for n in pending]
    return out


_CONNECTIVES = {"and", "or", "not", "exists", "forall", "="}


def _check_formula(expr: SExpr, preds: dict, scope: dict, constants: dict, types) -> None:
    if not isinstance(expr, list) or not expr or not isinstance(expr[0], str):
        raise PddlSyntaxError(f"malformed formula {expr!r}")
    head = expr[0]
    if head in ("and", "or"):
        for e in expr[1:]:
            _check_formula(e, preds, scope, constants, types)
        return
    if head == "not":
        if len(expr) != 2:
            raise PddlSyntaxError("not takes one argument")
        _check_formula(expr[1], preds, scope, constants, types)
        return
    if head in ("exists", "forall"):
        if len(expr) != 3 or not isinstance(expr[1], list):
            raise PddlSyntaxError(f"malformed {head}")
        inner = dict(scope)
        inner.update(parse_typed_list(expr[1], types))
        _check_formula(expr[2], preds, inner, constants, types)
        return
    for a in expr[1:]:
        if not isinstance(a, str):
            raise PddlSyntaxError(f"nested term in atom {to_text(expr)}")
        if a.startswith("?"):
            if a not in scope:
                raise PddlSyntaxError(f"unbound variable {a} in {to_text(expr)}")
        elif a not in constants:
            raise PddlSyntaxError(f"unknown constant {a} in {to_text(expr)}")
    if head == "=" or head.startswith("@"):
        return
    if head not in preds:
        raise PddlSyntaxError(f"undeclared predicate {head}")
    if len(preds[head]) != len(expr) - 1:
        raise PddlSyntaxError(f"arity mismatch for {head}")
    for a, t in zip(expr[1:], preds[head]):
        actual = scope[a] if a.startswith("?") else constants[a]
        if actual != t:
            raise PddlSyntaxError(f"{a} has type {actual}, {head} expects {t}")


def _sections(expr: SExpr, kind: str) -> tuple[str, list]:
    if not isinstance(expr, list) or len(expr) < 2 or expr[0] != "define":
        raise PddlSyntaxError("expected (define ...)")
    head = expr[1]
    if not (isinstance(head, list) and len(head) == 2 and head[0] == kind and isinstance(head[1], str)):
        raise PddlSyntaxError(f"expected ({kind} NAME)")
    for sec in expr[2:]:
        if not isinstance(sec, list) or not sec or not isinstance(sec[0], str) or not sec[0].startswith(":"):
            raise PddlSyntaxError(f"malformed section {to_text(sec)}")
    return head[1], expr[2:]


def parse_domain(text: str) -> ParsedDomain:
    name, sections = _sections(parse_sexpr(text), "domain")
    types: tuple[str, ...] = ()
    constants: dict = {}
    preds: dict = {}
    actions: dict = {}
    for sec in sections:
        key = sec[0]
        if key == ":requirements":
            bad = [r for r in sec[1:] if r not in (":strips", ":typing")]
            if bad:
                raise PddlSyntaxError(f"unsupported requirements {bad}")
        elif key == ":types":
            types = tuple(n for n, _ in parse_typed_list(sec[1:]))
        elif key == ":constants":
            constants = dict(parse_typed_list(sec[1:], types))
        elif key == ":predicates":
            for p in sec[1:]:
                if not isinstance(p, list) or not p:
                    raise PddlSyntaxError("malformed predicate declaration")
                params = parse_typed_list(p[1:], types)
                if any(not v.startswith("?") for v, _ in params):
                    raise PddlSyntaxError(f"predicate {p[0]} parameters need '?'")
                preds[p[0]] = tuple(t for _, t in params)
        elif key == ":action":
            a = _parse_action(sec, preds, constants, types)
            actions[a.name] = a
        else:
            raise PddlSyntaxError(f"unknown domain section {key}")
    return ParsedDomain(name, types, constants, preds, actions)


def _parse_action(sec: list, preds: dict, constants: dict, types) -> ParsedAction:
    if len(sec) != 8 or sec[2] != ":parameters" or sec[4] != ":precondition" or sec[6] != ":effect":
        raise PddlSyntaxError(f"action {sec[1] if len(sec) > 1 else '?'} needs :parameters, :precondition, :effect")
    name = sec[1]
    if not isinstance(sec[3], list):
        raise PddlSyntaxError("parameters must be a list")
    params = parse_typed_list(sec[3], types)
    if any(not v.startswith("?") for v, _ in params):
        raise PddlSyntaxError(f"action {name} parameters need '?'")
    scope = dict(params)
    _check_formula(sec[5], preds, scope, constants, types)
    eff = sec[7]
    if not (isinstance(eff, list) and eff and isinstance(eff[0], str) and eff[0].startswith("@")):
        raise PddlSyntaxError(f"action {name}: effect must call an external function")
    _check_formula(eff, preds, scope, constants, types)
    return ParsedAction(name, tuple(t for _, t in params), sec[5], eff)


def parse_problem(text: str, domain: ParsedDomain) -> ParsedProblem:
    name, sections = _sections(parse_sexpr(text), "problem")
    dom = None
    objects: dict = {}
    init: set = set()
    goal: set = set()
    for sec in sections:
        key = sec[0]
        if key == ":domain":
            dom = sec[1]
            if dom != domain.name:
                raise PddlSyntaxError(f"problem targets domain {dom}, not {domain.name}")
        elif key == ":objects":
            objects = dict(parse_typed_list(sec[1:], domain.types))
        elif key == ":init":
            known = {**domain.constants, **objects}
            for atom in sec[1:]:
                _check_formula(atom, domain.predicates, {}, known, domain.types)
                init.add(tuple(atom))
        elif key == ":goal":
            known = {**domain.constants, **objects}
            g = sec[1]
            _check_formula(g, domain.predicates, {}, known, domain.types)
            atoms = g[1:] if g[0] == "and" else [g]
            goal.update(tuple(a) for a in atoms)
        else:
            raise PddlSyntaxError(f"unknown problem section {key}")
    if dom is None:
        raise PddlSyntaxError("problem lacks :domain")
    return ParsedProblem(name, dom, objects, frozenset(init), frozenset(goal))


# ---------------------------------------------------------------- comparison


def domain_matches(parsed: ParsedDomain, model: DomainModel) -> list[str]:
    """Differences between a parsed domain and the model it was emitted from."""
    diffs = []
    if parsed.name != model.name:
        diffs.append(f"name {parsed.name} != {model.name}")
    want_preds = {p.name: tuple(t.value for t in p.params) for p in model.predicates}
    if parsed.predicates != want_preds:
        diffs.append("predicate declarations differ")
    want_consts = {}
    for t in (T.COLOR, T.SIZE, T.STEP, T.ROTATION, T.F_DIRECTION, T.M_DIRECTION, T.SHAPE):
        for v in model.universe[t]:
            want_consts[object_name(t, v)] = t.value
    if parsed.constants != want_consts:
        diffs.append("constants differ")
    if list(parsed.actions) != [s.name for s in model.schemes]:
        diffs.append("action set differs")
    for s in model.schemes:
        a = parsed.actions.get(s.name)
        if a is None:
            continue
        if a.param_types != tuple(t.value for t in s.params):
            diffs.append(f"{s.name}: parameter types differ")
        if a.precondition != precondition(s):
            diffs.append(f"{s.name}: precondition differs")
        if a.effect != effect(s):
            diffs.append(f"{s.name}: effect differs")
    return diffs


def problem_matches(parsed: ParsedProblem, model: DomainModel, inst: InstanceDescription) -> list[str]:
    diffs = []
    want_objs = {}
    for t in (T.NODE, T.PIXEL):
        for v in inst.universe[t]:
            want_objs[object_name(t, v)] = t.value
    if parsed.objects != want_objs:
        diffs.append("objects differ")
    if parsed.init != frozenset(initial_atoms(model, inst)):
        diffs.append("init differs")
    if parsed.goal != frozenset(goal_atoms(inst)):
        diffs.append("goal differs")
    return diffs
