"""Makespan scheduling of task DAGs on identical processors."""
from .baseline import (
    BudgetExceeded,
    PriorityPolicy,
    bottom_level,
    brute_force_optimal,
    list_schedule,
)
from .estimators import GeneticScheduler, ListScheduler, OptimalScheduler
from .ga import GaConfig, GaResult, run
from .schedule import (
    Chromosome,
    GanttChart,
    ScheduleError,
    evaluate,
    lower_bound,
    validate_chromosome,
)
from .taskgraph import (
    GenSpec,
    GraphError,
    TaskGraph,
    compute_heights,
    critical_path_length,
    generate_random,
    parse_graph,
    serialize_graph,
    validate,
)

__version__ = "0.1.0"
