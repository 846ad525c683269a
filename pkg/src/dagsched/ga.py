"""Height-structured genetic algorithm for makespan minimisation.

Individuals are :class:`~dagsched.schedule.Chromosome` values whose
processor lists are height-ascending.  The operators keep that property:
crossover exchanges everything above a common cut height, and mutation swaps
two tasks of the same height.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .schedule import Chromosome, chart_to_chromosome, makespan
from .taskgraph import TaskGraph, compute_heights

__all__ = [
    "GaConfig",
    "GaResult",
    "GenerationStats",
    "FitnessLedger",
    "init_population",
    "fitness",
    "select",
    "crossover",
    "crossover_at",
    "mutate",
    "swap_tasks",
    "run",
]


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 20
    max_iterations: int = 500
    crossover_rate: float = 0.8
    mutation_rate: float = 0.1
    convergence_window: int = 50
    seed: int = 0
    seed_with_lsh: bool = False

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.convergence_window < 1:
            raise ValueError("convergence_window must be >= 1")
        for name in ("crossover_rate", "mutation_rate"):
            r = getattr(self, name)
            if not 0.0 <= r <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {r}")


@dataclass(frozen=True)
class GenerationStats:
    best_ft: int
    mean_ft: float
    cmax: int


@dataclass
class FitnessLedger:
    """Running maximum finishing time of a run and the fitness it induces."""

    cmax: int = 0

    def observe(self, fts) -> None:
        self.cmax = max(self.cmax, max(fts))

    def fitness(self, ft) -> int:
        return fitness(ft, self.cmax)


@dataclass
class GaResult:
    best: Chromosome
    best_makespan: int
    generations_run: int
    history: list = field(default_factory=list)

    def history_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["generation", "best_ft", "mean_ft", "cmax"])
        for g, h in enumerate(self.history, start=1):
            w.writerow([g, h.best_ft, f"{h.mean_ft:.4f}", h.cmax])
        return buf.getvalue()


def _levels(heights):
    levels = [[] for _ in range(max(heights) + 1)]
    for t, h in enumerate(heights):
        levels[h].append(t)
    return levels


def init_population(graph: TaskGraph, m: int, size: int, rng, heights=None) -> list:
    """Random height-ascending chromosomes.

    Levels are visited bottom-up; each level's tasks are shuffled and each
    task is appended to a uniformly chosen processor.
    """
    if m < 1 or size < 1:
        raise ValueError("m and size must be positive")
    heights = compute_heights(graph) if heights is None else heights
    levels = _levels(heights)
    pop = []
    for _ in range(size):
        lists = [[] for _ in range(m)]
        for level in levels:
            order = rng.permutation(len(level))
            procs = rng.integers(0, m, size=len(level))
            for i, p in zip(order, procs):
                lists[p].append(level[i])
        pop.append(Chromosome.from_lists(lists))
    return pop


def fitness(ft, cmax) -> int:
    """cmax - ft + 1: the worst schedule seen so far still gets weight 1."""
    return cmax - ft + 1


def select(population, fitness_values, rng) -> list:
    """Roulette-wheel sampling with replacement, same size as ``population``."""
    f = np.asarray(fitness_values, dtype=float)
    if np.any(f <= 0):
        raise ValueError("roulette selection needs strictly positive fitness")
    idx = rng.choice(len(population), size=len(population), p=f / f.sum())
    return [population[i] for i in idx]


def crossover_at(a: Chromosome, b: Chromosome, heights, cut: int):
    """Children that keep one parent below ``cut`` (inclusive) and the other above."""
    c1, c2 = [], []
    for pa, pb in zip(a.procs, b.procs):
        a_lo = [t for t in pa if heights[t] <= cut]
        a_hi = [t for t in pa if heights[t] > cut]
        b_lo = [t for t in pb if heights[t] <= cut]
        b_hi = [t for t in pb if heights[t] > cut]
        c1.append(a_lo + b_hi)
        c2.append(b_lo + a_hi)
    return Chromosome.from_lists(c1), Chromosome.from_lists(c2)


def crossover(a: Chromosome, b: Chromosome, heights, rng):
    """Exchange the parts above a random cut height.

    The cut ``c`` is uniform on ``{0, ..., H-1}``.  When every task has
    height 0 there is no cut site and the parents come back unchanged.
    """
    top = max(heights)
    if top == 0:
        return a, b
    cut = int(rng.integers(0, top))
    return crossover_at(a, b, heights, cut)


def swap_tasks(c: Chromosome, t1: int, t2: int) -> Chromosome:
    lists = [list(p) for p in c.procs]
    where = {}
    for p, tasks in enumerate(lists):
        for i, t in enumerate(tasks):
            if t in (t1, t2):
                where[t] = (p, i)
    (p1, i1), (p2, i2) = where[t1], where[t2]
    lists[p1][i1], lists[p2][i2] = t2, t1
    return Chromosome.from_lists(lists)


def mutate(c: Chromosome, heights, rng, levels=None) -> Chromosome:
    """Swap the positions of two distinct tasks drawn from one height level."""
    levels = _levels(heights) if levels is None else levels
    wide = [lv for lv in levels if len(lv) >= 2]
    if not wide:
        return c
    level = wide[int(rng.integers(len(wide)))]
    i, j = rng.choice(len(level), size=2, replace=False)
    return swap_tasks(c, level[i], level[j])


def run(graph: TaskGraph, m: int, config: GaConfig | None = None, callback=None) -> GaResult:
    """Evolve schedules for ``graph`` on ``m`` processors.

    Each generation evaluates the population, raises ``cmax``, records the
    best string, then builds the next population by roulette selection,
    shuffled pairwise crossover, mutation and elitist replacement of the
    worst offspring.  Stops after ``max_iterations`` generations or when the
    best makespan has not improved for ``convergence_window`` generations.

    All randomness comes from one generator seeded with ``config.seed`` and
    is consumed in a fixed order, so equal inputs give equal results.

    ``callback(generation, population, makespans)``, if given, sees every
    evaluated population; it must not mutate its arguments.
    """
    config = config or GaConfig()
    if m < 1:
        raise ValueError("m must be >= 1")
    heights = compute_heights(graph)
    levels = _levels(heights)
    rng = np.random.default_rng(config.seed)
    cache = {}

    def ft_of(c):
        v = cache.get(c.procs)
        if v is None:
            v = cache[c.procs] = makespan(graph, c)
        return v

    pop = init_population(graph, m, config.population_size, rng, heights)
    if config.seed_with_lsh:
        from .baseline import list_schedule

        lsh = chart_to_chromosome(list_schedule(graph, m))
        if all(heights[a] <= heights[b] for p in lsh.procs for a, b in zip(p, p[1:])):
            pop[0] = lsh

    ledger = FitnessLedger()
    best, best_ft = None, None
    history = []
    stale = 0
    fts = [ft_of(c) for c in pop]
    for gen in range(config.max_iterations):
        if callback is not None:
            callback(gen, pop, fts)
        ledger.observe(fts)
        i_best = int(np.argmin(fts))
        if best is None or fts[i_best] < best_ft:
            best, best_ft = pop[i_best], fts[i_best]
            stale = 0
        else:
            stale += 1
        history.append(GenerationStats(best_ft, float(np.mean(fts)), ledger.cmax))
        if stale >= config.convergence_window or gen + 1 == config.max_iterations:
            break

        pool = select(pop, [ledger.fitness(f) for f in fts], rng)
        pool = [pool[i] for i in rng.permutation(len(pool))]
        children = []
        for k in range(0, len(pool) - 1, 2):
            a, b = pool[k], pool[k + 1]
            if rng.random() < config.crossover_rate:
                a, b = crossover(a, b, heights, rng)
            children.extend((a, b))
        if len(pool) % 2:
            children.append(pool[-1])
        for k in range(len(children)):
            if rng.random() < config.mutation_rate:
                children[k] = mutate(children[k], heights, rng, levels)

        fts = [ft_of(c) for c in children]
        worst = max(range(len(fts)), key=lambda k: (fts[k], -k))
        children[worst] = best
        fts[worst] = best_ft
        pop = children

    return GaResult(best, best_ft, len(history), history)
