"""Reference schedulers: greedy list scheduling and an exhaustive oracle."""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .schedule import Chromosome, GanttChart, evaluate
from .taskgraph import TaskGraph, check_graph, compute_heights, topological_order

__all__ = [
    "PriorityPolicy",
    "POLICIES",
    "BudgetExceeded",
    "OptimalResult",
    "bottom_level",
    "priorities",
    "list_schedule",
    "brute_force_optimal",
]

POLICIES = ("bottom_level", "height_descending", "random")


class BudgetExceeded(RuntimeError):
    """The exhaustive search visited more nodes than allowed."""


@dataclass(frozen=True)
class PriorityPolicy:
    """How list scheduling ranks ready tasks.

    ``bottom_level``
        longest remaining path including the task itself.
    ``height_descending``
        tasks at lower height levels first (priority falls as height grows).
    ``random``
        every task has equal priority, so the order is the seeded tie-break.
    """

    kind: str = "bottom_level"
    tie_break_seed: int = 0

    def __post_init__(self):
        if self.kind not in POLICIES:
            raise ValueError(f"unknown policy {self.kind!r}; expected one of {POLICIES}")


def bottom_level(graph: TaskGraph) -> tuple:
    """bl(t) = exec_time(t) + max bl over successors (exec_time for sinks)."""
    check_graph(graph)
    bl = [0] * graph.n
    for t in reversed(topological_order(graph)):
        succ = graph.successors[t]
        bl[t] = graph.exec_time[t] + (max(bl[s] for s in succ) if succ else 0)
    return tuple(bl)


def priorities(graph: TaskGraph, policy: PriorityPolicy) -> tuple:
    if policy.kind == "bottom_level":
        return bottom_level(graph)
    if policy.kind == "height_descending":
        return tuple(-h for h in compute_heights(graph))
    return (0,) * graph.n


def list_schedule(graph: TaskGraph, m: int, policy: PriorityPolicy | None = None) -> GanttChart:
    """Non-delay list scheduling on ``m`` identical processors.

    Whenever a processor is free and tasks are ready, the ready task with the
    highest priority goes to the lowest-indexed free processor.  Equal
    priorities are ordered by a random permutation drawn from
    ``policy.tie_break_seed``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    policy = policy or PriorityPolicy()
    check_graph(graph)
    n = graph.n
    prio = priorities(graph, policy)
    tie = np.random.default_rng(policy.tie_break_seed).permutation(n)

    remaining = [len(p) for p in graph.predecessors]
    ready = [(-prio[t], int(tie[t]), t) for t in range(n) if remaining[t] == 0]
    heapq.heapify(ready)
    free_procs = list(range(m))
    running = []  # (finish, proc, task)
    proc = [0] * n
    start = [0] * n
    finish = [0] * n
    now = 0
    scheduled = 0
    while scheduled < n:
        free_procs.sort()
        while free_procs and ready:
            _, _, t = heapq.heappop(ready)
            p = free_procs.pop(0)
            proc[t], start[t] = p, now
            finish[t] = now + graph.exec_time[t]
            heapq.heappush(running, (finish[t], p, t))
            scheduled += 1
        if not running:
            break
        now = running[0][0]
        while running and running[0][0] == now:
            _, p, t = heapq.heappop(running)
            free_procs.append(p)
            for s in graph.successors[t]:
                remaining[s] -= 1
                if remaining[s] == 0:
                    heapq.heappush(ready, (-prio[s], int(tie[s]), s))
    return GanttChart(m, tuple(proc), tuple(start), tuple(finish), max(finish, default=0))


@dataclass(frozen=True)
class OptimalResult:
    makespan: int
    chromosome: Chromosome
    chart: GanttChart
    nodes: int


def brute_force_optimal(graph: TaskGraph, m: int, budget: int = 2_000_000) -> OptimalResult:
    """Minimum makespan over all height-ascending chromosomes.

    Depth-first branch and bound.  Levels are filled one at a time; within
    a level processor 0 receives its (possibly empty) ordered segment, then
    processor 1, and so on, so every chromosome is generated exactly once.
    Start times are final as soon as a task is placed, because predecessors
    always sit on lower levels.

    Raises
    ------
    BudgetExceeded
        If more than ``budget`` search nodes are expanded.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    heights = compute_heights(graph)
    n = graph.n
    et = graph.exec_time
    preds = graph.predecessors
    bl = bottom_level(graph)
    tail = [bl[t] - et[t] for t in range(n)]
    levels = [[] for _ in range(max(heights) + 1)]
    for t in range(n):
        levels[heights[t]].append(t)

    finish = [0] * n
    lists = [[] for _ in range(m)]
    free = [0] * m
    best = [float("inf"), None]
    nodes = [0]
    work_left = [graph.total_work]

    def bound(path_bound):
        # committed processor time plus unplaced work, spread evenly
        spread = -(-(sum(free) + work_left[0]) // m)
        return max(path_bound, spread, max(free))

    def place_level(lv, p, unplaced, path_bound):
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded(f"search exceeded {budget} nodes")
        if bound(path_bound) >= best[0]:
            return
        if not unplaced:
            if lv + 1 == len(levels):
                best[0] = max(free)
                best[1] = [list(x) for x in lists]
                return
            place_level(lv + 1, 0, list(levels[lv + 1]), path_bound)
            return
        if p == m - 1:
            choices = unplaced
        else:
            # close this processor's segment and move on
            place_level(lv, p + 1, unplaced, path_bound)
            choices = unplaced
        saved_free = free[p]
        for i, t in enumerate(choices):
            s = saved_free
            for q in preds[t]:
                if finish[q] > s:
                    s = finish[q]
            finish[t] = s + et[t]
            free[p] = finish[t]
            lists[p].append(t)
            work_left[0] -= et[t]
            rest = unplaced[:i] + unplaced[i + 1:]
            place_level(lv, p, rest, max(path_bound, finish[t] + tail[t]))
            work_left[0] += et[t]
            lists[p].pop()
            free[p] = saved_free

    place_level(0, 0, list(levels[0]), 0)
    c = Chromosome.from_lists(best[1])
    chart = evaluate(graph, c)
    return OptimalResult(int(best[0]), c, chart, nodes[0])
