"""scikit-learn style wrappers around the schedulers.

Each scheduler is a :class:`~sklearn.base.BaseEstimator`, so ``get_params``,
``set_params``, ``clone`` and parameter grids work as usual.  ``fit`` takes a
task graph (a :class:`TaskGraph`, a path to a graph file, or graph JSON
text) and stores the schedule in trailing-underscore attributes.
"""
from __future__ import annotations

import os
from pathlib import Path

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .baseline import PriorityPolicy, brute_force_optimal, list_schedule
from .ga import GaConfig, run
from .schedule import chart_to_chromosome, evaluate, lower_bound
from .taskgraph import TaskGraph, check_graph, parse_graph

__all__ = ["check_task_graph", "check_processors", "GeneticScheduler", "ListScheduler", "OptimalScheduler"]


def check_task_graph(X) -> TaskGraph:
    """Coerce ``X`` to a validated :class:`TaskGraph`."""
    if isinstance(X, TaskGraph):
        return check_graph(X)
    if isinstance(X, (str, os.PathLike)):
        text = str(X)
        if isinstance(X, os.PathLike) or not text.lstrip().startswith("{"):
            return parse_graph(Path(X).read_bytes())
        return parse_graph(text)
    if isinstance(X, (bytes, bytearray)):
        return parse_graph(X)
    raise TypeError(f"expected a TaskGraph, graph file path or JSON text, got {type(X).__name__}")


def check_processors(n_processors) -> int:
    if isinstance(n_processors, bool) or not isinstance(n_processors, int) or n_processors < 1:
        raise ValueError(f"n_processors must be a positive integer, got {n_processors!r}")
    return n_processors


class _SchedulerMixin:
    _estimator_type = "scheduler"

    def fit_predict(self, X, y=None):
        """Fit on ``X`` and return the resulting :class:`GanttChart`."""
        return self.fit(X).chart_

    def predict(self, X=None):
        """Gantt chart of the fitted schedule (``X`` must be the fitted graph if given)."""
        check_is_fitted(self, "chart_")
        if X is not None and check_task_graph(X) != self.graph_:
            raise ValueError("predict() only applies to the graph the scheduler was fitted on")
        return self.chart_

    def score(self, X=None, y=None):
        """Negative makespan, so larger is better."""
        check_is_fitted(self, "makespan_")
        return -float(self.makespan_)

    def _store(self, graph, chromosome, chart):
        self.graph_ = graph
        self.chromosome_ = chromosome
        self.chart_ = chart
        self.makespan_ = chart.makespan
        self.lower_bound_ = lower_bound(graph, self.n_processors)


class GeneticScheduler(_SchedulerMixin, BaseEstimator):
    """Height-structured genetic algorithm.

    Parameters mirror :class:`~dagsched.ga.GaConfig`; see there for meaning.

    Attributes
    ----------
    chromosome_ : Chromosome
    chart_ : GanttChart
    makespan_ : int
    n_generations_ : int
    history_ : list of GenerationStats
    """

    def __init__(self, n_processors=2, population_size=20, max_iterations=500,
                 crossover_rate=0.8, mutation_rate=0.1, convergence_window=50,
                 seed_with_lsh=False, random_state=0):
        self.n_processors = n_processors
        self.population_size = population_size
        self.max_iterations = max_iterations
        self.crossover_rate = crossover_rate
        self.mutation_rate = mutation_rate
        self.convergence_window = convergence_window
        self.seed_with_lsh = seed_with_lsh
        self.random_state = random_state

    def fit(self, X, y=None):
        graph = check_task_graph(X)
        m = check_processors(self.n_processors)
        config = GaConfig(
            population_size=self.population_size,
            max_iterations=self.max_iterations,
            crossover_rate=self.crossover_rate,
            mutation_rate=self.mutation_rate,
            convergence_window=self.convergence_window,
            seed=0 if self.random_state is None else int(self.random_state),
            seed_with_lsh=self.seed_with_lsh,
        )
        result = run(graph, m, config)
        self._store(graph, result.best, evaluate(graph, result.best))
        self.n_generations_ = result.generations_run
        self.history_ = result.history
        self.result_ = result
        return self


class ListScheduler(_SchedulerMixin, BaseEstimator):
    """Greedy non-delay list scheduling with a static priority."""

    def __init__(self, n_processors=2, policy="bottom_level", random_state=0):
        self.n_processors = n_processors
        self.policy = policy
        self.random_state = random_state

    def fit(self, X, y=None):
        graph = check_task_graph(X)
        m = check_processors(self.n_processors)
        policy = PriorityPolicy(self.policy, 0 if self.random_state is None else int(self.random_state))
        chart = list_schedule(graph, m, policy)
        self._store(graph, chart_to_chromosome(chart), chart)
        return self


class OptimalScheduler(_SchedulerMixin, BaseEstimator):
    """Exhaustive search over height-ordered schedules; small graphs only."""

    def __init__(self, n_processors=2, budget=2_000_000):
        self.n_processors = n_processors
        self.budget = budget

    def fit(self, X, y=None):
        graph = check_task_graph(X)
        m = check_processors(self.n_processors)
        res = brute_force_optimal(graph, m, self.budget)
        self._store(graph, res.chromosome, res.chart)
        self.n_nodes_ = res.nodes
        return self
