"""GA-vs-LSH comparison harness on identical random instances."""
from __future__ import annotations

import csv
import io
import time
from collections import defaultdict
from dataclasses import asdict, dataclass, replace

import numpy as np

from .baseline import PriorityPolicy, brute_force_optimal, list_schedule
from .ga import GaConfig, run
from .schedule import lower_bound
from .taskgraph import GenSpec, TaskGraph, generate_random

CSV_HEADER = (
    "instance_id",
    "n",
    "m",
    "algo",
    "policy",
    "makespan",
    "lower_bound",
    "generations",
    "wall_ms",
    "seed",
)


@dataclass(frozen=True)
class RunReport:
    instance_id: str
    n: int
    m: int
    algo: str
    policy: str
    makespan: int
    lower_bound: int
    generations: int
    wall_ms: float
    seed: int

    def row(self) -> list:
        d = asdict(self)
        d["wall_ms"] = f"{self.wall_ms:.3f}"
        return [d[k] for k in CSV_HEADER]


def derive_seed(master: int, *keys: int) -> int:
    """Stable 63-bit seed from a master seed and integer keys."""
    state = np.random.SeedSequence([master, *keys]).generate_state(2, dtype=np.uint32)
    return int((int(state[0]) << 31) ^ int(state[1])) & (2**63 - 1)


def ga_summary(cfg: GaConfig) -> str:
    s = (
        f"pop={cfg.population_size};iters={cfg.max_iterations};cx={cfg.crossover_rate};"
        f"mut={cfg.mutation_rate};window={cfg.convergence_window}"
    )
    return s + (";lsh_seed" if cfg.seed_with_lsh else "")


def solve(graph: TaskGraph, m: int, algo: str, *, instance_id="-", seed=0,
          config: GaConfig | None = None, policy: PriorityPolicy | None = None,
          budget: int = 2_000_000):
    """Run one algorithm and return ``(RunReport, chromosome_or_chart)``."""
    t0 = time.perf_counter()
    generations = 0
    if algo == "ga":
        cfg = replace(config or GaConfig(), seed=seed)
        res = run(graph, m, cfg)
        span, payload, label, generations = res.best_makespan, res, ga_summary(cfg), res.generations_run
    elif algo == "lsh":
        pol = policy or PriorityPolicy(tie_break_seed=seed)
        chart = list_schedule(graph, m, pol)
        span, payload, label = chart.makespan, chart, pol.kind
    elif algo == "opt":
        res = brute_force_optimal(graph, m, budget)
        span, payload, label = res.makespan, res, "exhaustive"
    else:
        raise ValueError(f"unknown algorithm {algo!r}")
    wall = (time.perf_counter() - t0) * 1000.0
    report = RunReport(instance_id, graph.n, m, algo, label, span,
                       lower_bound(graph, m), generations, wall, seed)
    return report, payload


def _bench_one(args):
    n, m, rep, master, gen_kw, config, algos = args
    seed = derive_seed(master, n, m, rep)
    graph = generate_random(GenSpec(n=n, seed=seed, **gen_kw))
    iid = f"n{n}-m{m}-r{rep}"
    rows = []
    for algo in algos:
        report, _ = solve(graph, m, algo, instance_id=iid, seed=seed, config=config)
        rows.append(report)
    return rows


def run_bench(sizes, procs, reps, seed=0, config: GaConfig | None = None,
              algos=("lsh", "ga"), jobs: int = 1, gen_kw=None) -> list:
    """Every (n, m, rep) instance solved by every algorithm in ``algos``.

    Rows come back sorted by (n, m, rep, algo order) whatever ``jobs`` is.
    """
    gen_kw = gen_kw or {}
    tasks = [(n, m, r, seed, gen_kw, config, tuple(algos))
             for n in sizes for m in procs for r in range(reps)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_bench_one, tasks))
    else:
        chunks = [_bench_one(t) for t in tasks]
    return [r for chunk in chunks for r in chunk]


def to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in reports:
        w.writerow(r.row())
    return buf.getvalue()


def summary_table(reports) -> str:
    """Mean makespan per (n, m) and algorithm, one line per size."""
    acc = defaultdict(list)
    algos = []
    for r in reports:
        acc[(r.n, r.m, r.algo)].append(r.makespan)
        if r.algo not in algos:
            algos.append(r.algo)
    keys = sorted({(n, m) for n, m, _ in acc})
    head = f"{'n':>5} {'m':>3} " + " ".join(f"{a:>10}" for a in algos)
    lines = [head]
    for n, m in keys:
        cells = " ".join(f"{np.mean(acc[(n, m, a)]):>10.1f}" for a in algos)
        lines.append(f"{n:>5} {m:>3} {cells}")
    return "\n".join(lines) + "\n"
