"""Independent reference computations used only by the tests.

None of these share code paths with the package: they enumerate paths,
tick a clock one time unit at a time, or walk every encoding.
"""
from __future__ import annotations

import itertools


def all_paths(n, edges):
    succ = {t: [] for t in range(n)}
    for u, v in edges:
        succ[u].append(v)
    has_pred = {v for _, v in edges}

    def walk(path):
        tails = succ[path[-1]]
        if not tails:
            yield path
        for s in tails:
            yield from walk(path + [s])

    for t in range(n):
        if t not in has_pred:
            yield from walk([t])


def longest_path_by_enumeration(exec_time, edges):
    return max(sum(exec_time[t] for t in p) for p in all_paths(len(exec_time), edges))


def bottom_levels_by_enumeration(exec_time, edges):
    n = len(exec_time)
    best = [0] * n
    for p in all_paths(n, edges):
        for k, t in enumerate(p):
            best[t] = max(best[t], sum(exec_time[x] for x in p[k:]))
    return best


def longest_edge_count_ending_at(n, edges):
    """Bellman-Ford style relaxation until fixpoint (no topological sort)."""
    depth = [0] * n
    changed = True
    while changed:
        changed = False
        for u, v in edges:
            if depth[u] + 1 > depth[v]:
                depth[v] = depth[u] + 1
                changed = True
    return depth


def reachable(n, edges, a, b):
    succ = {t: [] for t in range(n)}
    for u, v in edges:
        succ[u].append(v)
    seen, stack = {a}, [a]
    while stack:
        x = stack.pop()
        if x == b:
            return True
        for s in succ[x]:
            if s not in seen:
                seen.add(s)
                stack.append(s)
    return False


def tick_simulate(exec_time, edges, procs):
    """Unit-time clock simulation of in-order processor lists.

    Returns ``(start, finish)`` dicts, or ``None`` if the lists deadlock.
    """
    n = len(exec_time)
    preds = {t: [u for u, v in edges if v == t] for t in range(n)}
    pos = [0] * len(procs)
    busy_until = [0] * len(procs)
    start, finish = {}, {}
    clock = 0
    horizon = sum(exec_time) + 1
    while len(finish) < n:
        if clock > horizon:
            return None
        for p, tasks in enumerate(procs):
            if busy_until[p] > clock or pos[p] >= len(tasks):
                continue
            t = tasks[pos[p]]
            if all(q in finish and finish[q] <= clock for q in preds[t]):
                start[t] = clock
                finish[t] = clock + exec_time[t]
                busy_until[p] = finish[t]
                pos[p] += 1
        clock += 1
    return start, finish


def all_height_ordered_chromosomes(heights, m):
    """Every assignment of tasks to processors, every within-level order."""
    n = len(heights)
    for assign in itertools.product(range(m), repeat=n):
        per_proc_options = []
        for p in range(m):
            mine = [t for t in range(n) if assign[t] == p]
            groups = {}
            for t in mine:
                groups.setdefault(heights[t], []).append(t)
            level_perms = [list(itertools.permutations(groups[h])) for h in sorted(groups)]
            per_proc_options.append(
                [sum((list(x) for x in combo), []) for combo in itertools.product(*level_perms)]
            )
        for combo in itertools.product(*per_proc_options):
            yield [list(x) for x in combo]


def optimum_by_enumeration(exec_time, edges, heights, m):
    best = None
    for procs in all_height_ordered_chromosomes(heights, m):
        res = tick_simulate(exec_time, edges, procs)
        span = max(res[1].values())
        best = span if best is None else min(best, span)
    return best
