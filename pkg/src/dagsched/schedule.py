"""Schedule encoding and evaluation.

A :class:`Chromosome` holds one ordered task list per processor.  Evaluating
it runs every list strictly in order: a task starts once its processor is
free and all of its predecessors have finished, so the processor idles while
the head of its list waits.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from .taskgraph import TaskGraph, Violation

__all__ = [
    "Chromosome",
    "GanttChart",
    "ScheduleError",
    "validate_chromosome",
    "evaluate",
    "makespan",
    "lower_bound",
    "chart_to_chromosome",
    "chromosome_to_file",
    "chromosome_from_file",
]


class ScheduleError(ValueError):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


@dataclass(frozen=True)
class Chromosome:
    """Per-processor ordered task lists; index ``p`` is processor ``p``."""

    procs: tuple

    def __post_init__(self):
        object.__setattr__(self, "procs", tuple(tuple(int(t) for t in p) for p in self.procs))

    @classmethod
    def from_lists(cls, lists):
        return cls(tuple(tuple(p) for p in lists))

    @property
    def m(self) -> int:
        return len(self.procs)

    def processor_of(self) -> dict:
        return {t: p for p, tasks in enumerate(self.procs) for t in tasks}

    def __iter__(self):
        return iter(self.procs)


@dataclass(frozen=True)
class GanttChart:
    """Evaluated schedule.

    ``proc[t]``, ``start[t]`` and ``finish[t]`` describe task ``t``;
    ``makespan`` is the latest finish time (0 for an empty schedule).
    """

    m: int
    proc: tuple
    start: tuple
    finish: tuple
    makespan: int

    @property
    def assignment(self) -> dict:
        return {t: (self.proc[t], self.start[t], self.finish[t]) for t in range(len(self.proc))}

    def processor_finish_times(self) -> list:
        ftp = [0] * self.m
        for p, f in zip(self.proc, self.finish):
            ftp[p] = max(ftp[p], f)
        return ftp


def _coverage_violations(n, c):
    out = []
    counts = Counter(t for p in c.procs for t in p)
    for t, k in sorted(counts.items()):
        if not 0 <= t < n:
            out.append(Violation("unknown_task", f"task {t} is not in the graph", (t,)))
        elif k > 1:
            out.append(Violation("duplicate", f"task {t} appears {k} times", (t,)))
    missing = [t for t in range(n) if t not in counts]
    if missing:
        out.append(Violation("missing", f"tasks {missing} are not scheduled", tuple(missing)))
    return out


def validate_chromosome(graph: TaskGraph, heights, c: Chromosome) -> list:
    """Report missing/duplicate tasks and height-order inversions.

    An empty list means ``c`` is complete, unique and height-ascending on
    every processor.
    """
    out = []
    if c.m < 1:
        out.append(Violation("no_processors", "chromosome has no processor lists"))
    out.extend(_coverage_violations(graph.n, c))
    for p, tasks in enumerate(c.procs):
        for a, b in zip(tasks, tasks[1:]):
            if 0 <= a < graph.n and 0 <= b < graph.n and heights[a] > heights[b]:
                out.append(
                    Violation(
                        "height_order",
                        f"P{p + 1}: task {a} (height {heights[a]}) before task {b} (height {heights[b]})",
                        (a, b),
                    )
                )
    return out


def evaluate(graph: TaskGraph, c: Chromosome) -> GanttChart:
    """Simulate in-order execution of every processor list.

    Height-ascending chromosomes never deadlock.  Other complete orders are
    accepted as long as they are consistent with the precedence relation
    (e.g. a start-time-sorted list schedule).

    Raises
    ------
    ScheduleError
        If tasks are missing or duplicated, or the lists deadlock.
    """
    n = graph.n
    problems = _coverage_violations(n, c)
    if problems:
        raise ScheduleError("; ".join(map(str, problems)), problems)
    start, finish = _simulate(graph.exec_time, graph.predecessors, c.procs)
    if start is None:
        raise ScheduleError("processor lists deadlock: order contradicts precedence")
    proc = [0] * n
    for p, tasks in enumerate(c.procs):
        for t in tasks:
            proc[t] = p
    return GanttChart(c.m, tuple(proc), tuple(start), tuple(finish), max(finish, default=0))


def _simulate(exec_time, preds, procs):
    n = len(exec_time)
    finish = [-1] * n
    start = [0] * n
    pos = [0] * len(procs)
    free = [0] * len(procs)
    done = 0
    progress = True
    while progress:
        progress = False
        for p, tasks in enumerate(procs):
            i = pos[p]
            k = len(tasks)
            t_free = free[p]
            while i < k:
                t = tasks[i]
                ready = t_free
                for q in preds[t]:
                    fq = finish[q]
                    if fq < 0:
                        break
                    if fq > ready:
                        ready = fq
                else:
                    start[t] = ready
                    t_free = finish[t] = ready + exec_time[t]
                    i += 1
                    continue
                break
            if i != pos[p]:
                done += i - pos[p]
                pos[p] = i
                free[p] = t_free
                progress = True
    if done != n:
        return None, None
    return start, finish


def makespan(graph: TaskGraph, c: Chromosome) -> int:
    """Finishing time of ``c`` without building a chart (hot path for the GA)."""
    _, finish = _simulate(graph.exec_time, graph.predecessors, c.procs)
    if finish is None:
        raise ScheduleError("processor lists deadlock: order contradicts precedence")
    return max(finish, default=0)


def lower_bound(graph: TaskGraph, m: int) -> int:
    """max(critical path length, ceil(total work / m))."""
    from .taskgraph import critical_path_length

    return max(critical_path_length(graph), -(-graph.total_work // m))


def chart_to_chromosome(chart: GanttChart) -> Chromosome:
    """Per-processor lists ordered by start time (ties by task id)."""
    lists = [[] for _ in range(chart.m)]
    for t in sorted(range(len(chart.proc)), key=lambda t: (chart.start[t], t)):
        lists[chart.proc[t]].append(t)
    return Chromosome.from_lists(lists)


def chromosome_to_file(c: Chromosome) -> str:
    body = ",".join("[" + ",".join(map(str, p)) + "]" for p in c.procs)
    return f'{{"procs":[{body}]}}\n'


def chromosome_from_file(data, graph: TaskGraph | None = None, heights=None) -> Chromosome:
    """Parse a schedule file, optionally checking it against ``graph``.

    With ``heights`` given, height-order inversions are rejected too; without
    them only completeness and uniqueness are enforced.
    """
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ScheduleError(f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict) or set(doc) != {"procs"}:
        raise ScheduleError("schedule file must be an object with exactly one field 'procs'")
    procs = doc["procs"]
    if not isinstance(procs, list) or not all(
        isinstance(p, list) and all(isinstance(t, int) and not isinstance(t, bool) for t in p)
        for p in procs
    ):
        raise ScheduleError("'procs' must be a list of integer lists")
    c = Chromosome.from_lists(procs)
    if c.m < 1:
        raise ScheduleError("schedule needs at least one processor list")
    if graph is not None:
        if heights is not None:
            problems = validate_chromosome(graph, heights, c)
        else:
            problems = _coverage_violations(graph.n, c)
        if problems:
            raise ScheduleError("; ".join(map(str, problems)), problems)
    return c
