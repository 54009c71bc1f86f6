"""Solve ARC grid tasks by searching for planning programs over object graphs."""

from .abstraction import AbstractGraph, AbstractionKind, Node, abstract
from .arc_io import Grid, Task, TaskInstance, TaskResult, load_task
from .domain import build_domain
from .program import PlanningProgram, format_program, parse_program
from .synthesis import ParameterConfig, schedule, search, verify

__all__ = [
    "AbstractGraph",
    "AbstractionKind",
    "Grid",
    "Node",
    "ParameterConfig",
    "PlanningProgram",
    "Task",
    "TaskInstance",
    "TaskResult",
    "abstract",
    "build_domain",
    "format_program",
    "load_task",
    "parse_program",
    "schedule",
    "search",
    "verify",
]
__version__ = "0.1.0"
