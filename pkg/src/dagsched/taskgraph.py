"""Task graphs: representation, validation, level/path analytics, generation, I/O.

A task graph is a DAG over dense task ids ``0..n-1``.  Each task carries a
positive integer execution time; an edge ``(u, v)`` means ``u`` must finish
before ``v`` may start.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

__all__ = [
    "TaskGraph",
    "GenSpec",
    "Violation",
    "GraphError",
    "validate",
    "check_graph",
    "compute_heights",
    "critical_path_length",
    "topological_order",
    "generate_random",
    "parse_graph",
    "serialize_graph",
]


class GraphError(ValueError):
    """Raised when a task graph is malformed or violates a DAG invariant."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    tasks: tuple = ()

    def __str__(self):
        return f"{self.kind}: {self.message}"


@dataclass(frozen=True)
class TaskGraph:
    """Immutable DAG of tasks with integer execution times.

    Construction does not validate; call :func:`validate` or
    :func:`check_graph` before relying on the DAG invariants.

    Parameters
    ----------
    exec_time : sequence of int
        ``exec_time[i]`` is the duration of task ``i``.
    edges : iterable of (int, int)
        Precedence pairs ``(u, v)``: ``u`` is a predecessor of ``v``.
    """

    exec_time: tuple
    edges: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "exec_time", tuple(int(t) for t in self.exec_time))
        object.__setattr__(
            self, "edges", tuple(sorted((int(u), int(v)) for u, v in self.edges))
        )

    @property
    def task_count(self) -> int:
        return len(self.exec_time)

    @property
    def n(self) -> int:
        return len(self.exec_time)

    @cached_property
    def predecessors(self) -> tuple:
        preds = [[] for _ in range(self.n)]
        for u, v in self.edges:
            if 0 <= v < self.n:
                preds[v].append(u)
        return tuple(tuple(p) for p in preds)

    @cached_property
    def successors(self) -> tuple:
        succs = [[] for _ in range(self.n)]
        for u, v in self.edges:
            if 0 <= u < self.n:
                succs[u].append(v)
        return tuple(tuple(s) for s in succs)

    @property
    def total_work(self) -> int:
        return sum(self.exec_time)


@dataclass(frozen=True)
class GenSpec:
    """Parameters for :func:`generate_random`.

    Defaults follow the benchmark setting: 3 to 6 successors per task and
    execution times between 1 and 25.
    """

    n: int
    succ_min: int = 3
    succ_max: int = 6
    et_min: int = 1
    et_max: int = 25
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 1 <= self.succ_min <= self.succ_max:
            raise ValueError("need 1 <= succ_min <= succ_max")
        if not 1 <= self.et_min <= self.et_max:
            raise ValueError("need 1 <= et_min <= et_max")


def _find_cycle(n, succs):
    # iterative DFS, returns one cycle as a list of task ids or None
    color = [0] * n
    parent = [-1] * n
    for root in range(n):
        if color[root]:
            continue
        stack = [(root, iter(succs[root]))]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            for nxt in it:
                if color[nxt] == 0:
                    color[nxt] = 1
                    parent[nxt] = node
                    stack.append((nxt, iter(succs[nxt])))
                    break
                if color[nxt] == 1:
                    cycle = [node]
                    while cycle[-1] != nxt:
                        cycle.append(parent[cycle[-1]])
                    return cycle[::-1]
            else:
                color[node] = 2
                stack.pop()
    return None


def validate(graph: TaskGraph) -> list:
    """Return every invariant violation of ``graph``; an empty list means valid."""
    out = []
    n = graph.n
    if n < 1:
        out.append(Violation("empty", "graph has no tasks"))
    for t, et in enumerate(graph.exec_time):
        if et < 1:
            out.append(Violation("exec_time", f"exec_time({t}) = {et} < 1", (t,)))
    seen = set()
    clean = []
    for u, v in graph.edges:
        if not (0 <= u < n and 0 <= v < n):
            out.append(Violation("bad_id", f"edge ({u},{v}) references unknown task", (u, v)))
            continue
        if u == v:
            out.append(Violation("self_edge", f"self-edge on task {u}", (u,)))
            continue
        if (u, v) in seen:
            out.append(Violation("duplicate_edge", f"duplicate edge ({u},{v})", (u, v)))
            continue
        seen.add((u, v))
        clean.append((u, v))
    succs = [[] for _ in range(max(n, 0))]
    for u, v in clean:
        succs[u].append(v)
    cycle = _find_cycle(n, succs)
    if cycle is not None:
        out.append(Violation("cycle", f"cycle {cycle}", tuple(cycle)))
    return out


def check_graph(graph: TaskGraph) -> TaskGraph:
    """Raise :class:`GraphError` unless ``graph`` is a valid DAG."""
    problems = validate(graph)
    if problems:
        raise GraphError("; ".join(str(p) for p in problems), problems)
    return graph


def topological_order(graph: TaskGraph) -> list:
    """Kahn's algorithm, smallest ready id first."""
    import heapq

    indeg = [len(p) for p in graph.predecessors]
    ready = [t for t in range(graph.n) if indeg[t] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        t = heapq.heappop(ready)
        order.append(t)
        for s in graph.successors[t]:
            indeg[s] -= 1
            if indeg[s] == 0:
                heapq.heappush(ready, s)
    if len(order) != graph.n:
        raise GraphError("graph contains a cycle")
    return order


def compute_heights(graph: TaskGraph) -> tuple:
    """Level of each task: 0 for sources, else 1 + max predecessor level.

    Returns a tuple indexed by task id.
    """
    check_graph(graph)
    height = [0] * graph.n
    for t in topological_order(graph):
        preds = graph.predecessors[t]
        if preds:
            height[t] = 1 + max(height[p] for p in preds)
    return tuple(height)


def critical_path_length(graph: TaskGraph) -> int:
    """Largest sum of execution times along any directed path."""
    check_graph(graph)
    finish = [0] * graph.n
    for t in topological_order(graph):
        preds = graph.predecessors[t]
        finish[t] = graph.exec_time[t] + (max(finish[p] for p in preds) if preds else 0)
    return max(finish)


def generate_random(spec: GenSpec) -> TaskGraph:
    """Random DAG with edges pointing from lower to higher task ids.

    Execution times are drawn first (one per task, in id order), then for
    each task ``i`` a successor count ``k`` and ``min(k, n-1-i)`` distinct
    successors among the tasks with larger ids.
    """
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    et = rng.integers(spec.et_min, spec.et_max + 1, size=n)
    edges = []
    for i in range(n):
        k = int(rng.integers(spec.succ_min, spec.succ_max + 1))
        k = min(k, n - 1 - i)
        if k <= 0:
            continue
        chosen = rng.choice(np.arange(i + 1, n), size=k, replace=False)
        edges.extend((i, int(j)) for j in chosen)
    return TaskGraph(tuple(int(x) for x in et), edges)


def serialize_graph(graph: TaskGraph) -> str:
    """Canonical JSON text: tasks sorted by id, edges sorted lexicographically."""
    tasks = ",".join(f'{{"id":{i},"et":{et}}}' for i, et in enumerate(graph.exec_time))
    edges = ",".join(f"[{u},{v}]" for u, v in sorted(graph.edges))
    return f'{{"tasks":[{tasks}],"edges":[{edges}]}}\n'


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def parse_graph(data) -> TaskGraph:
    """Parse the JSON graph format from ``str`` or UTF-8 ``bytes``.

    Raises
    ------
    GraphError
        On malformed JSON, unknown or missing fields, non-dense ids, or any
        DAG invariant violation.
    """
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphError(f"graph file is not UTF-8: {exc}") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise GraphError(f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise GraphError("top level must be an object")
    unknown = set(doc) - {"tasks", "edges"}
    if unknown:
        raise GraphError(f"unknown field(s): {sorted(unknown)}")
    if "tasks" not in doc or not isinstance(doc["tasks"], list):
        raise GraphError("field 'tasks' must be a list")
    edges_doc = doc.get("edges", [])
    if not isinstance(edges_doc, list):
        raise GraphError("field 'edges' must be a list")

    et_by_id = {}
    for k, task in enumerate(doc["tasks"]):
        if not isinstance(task, dict):
            raise GraphError(f"tasks[{k}]: expected an object")
        extra = set(task) - {"id", "et"}
        if extra:
            raise GraphError(f"tasks[{k}]: unknown field(s) {sorted(extra)}")
        if not _is_int(task.get("id")) or not _is_int(task.get("et")):
            raise GraphError(f"tasks[{k}]: 'id' and 'et' must be integers")
        if task["id"] in et_by_id:
            raise GraphError(f"tasks[{k}]: duplicate task id {task['id']}")
        et_by_id[task["id"]] = task["et"]
    n = len(et_by_id)
    if set(et_by_id) != set(range(n)):
        raise GraphError(f"task ids must be exactly 0..{n - 1}")

    edges = []
    for k, e in enumerate(edges_doc):
        if not (isinstance(e, list) and len(e) == 2 and all(_is_int(x) for x in e)):
            raise GraphError(f"edges[{k}]: expected [u, v] integer pair")
        edges.append(tuple(e))
    graph = TaskGraph(tuple(et_by_id[i] for i in range(n)), edges)
    return check_graph(graph)
