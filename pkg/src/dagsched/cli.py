"""Command-line front end: ``dagsched gen|solve|bench|gantt``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .baseline import POLICIES, BudgetExceeded, PriorityPolicy
from .bench import run_bench, solve, summary_table, to_csv
from .ga import GaConfig
from .render import gantt_svg, gantt_text
from .schedule import (
    ScheduleError,
    chart_to_chromosome,
    chromosome_from_file,
    chromosome_to_file,
    evaluate,
)
from .taskgraph import (
    GenSpec,
    GraphError,
    critical_path_length,
    generate_random,
    parse_graph,
    serialize_graph,
)


class UsageError(Exception):
    pass


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _rate(text):
    v = float(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"expected a probability in [0, 1], got {text}")
    return v


def _int_list(text):
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("values must be positive integers")
    return vals


def _add_ga_flags(p):
    d = GaConfig()
    p.add_argument("--pop", type=_positive, default=d.population_size, help="population size")
    p.add_argument("--iters", type=_positive, default=d.max_iterations, help="max generations")
    p.add_argument("--cx-rate", type=_rate, default=d.crossover_rate)
    p.add_argument("--mut-rate", type=_rate, default=d.mutation_rate)
    p.add_argument("--window", type=_positive, default=d.convergence_window,
                   help="stop after this many generations without improvement")
    p.add_argument("--lsh-seed", action="store_true",
                   help="inject the list schedule into the initial population when height-ordered")


def _ga_config(args):
    return GaConfig(
        population_size=args.pop,
        max_iterations=args.iters,
        crossover_rate=args.cx_rate,
        mutation_rate=args.mut_rate,
        convergence_window=args.window,
        seed=args.seed,
        seed_with_lsh=args.lsh_seed,
    )


def build_parser():
    parser = argparse.ArgumentParser(prog="dagsched", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random task graph")
    g.add_argument("--n", type=_positive, required=True, help="number of tasks")
    g.add_argument("--succ-min", type=_positive, default=3)
    g.add_argument("--succ-max", type=_positive, default=6)
    g.add_argument("--et-min", type=_positive, default=1)
    g.add_argument("--et-max", type=_positive, default=25)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", type=Path, required=True)

    s = sub.add_parser("solve", help="schedule a graph file")
    s.add_argument("--graph", type=Path, required=True)
    s.add_argument("--algo", choices=("ga", "lsh", "opt"), default="ga")
    s.add_argument("--procs", type=_positive, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--policy", choices=POLICIES, default="bottom_level")
    s.add_argument("--budget", type=_positive, default=2_000_000, help="node limit for --algo opt")
    s.add_argument("--out", type=Path, help="schedule file to write")
    s.add_argument("--history", type=Path, help="GA per-generation CSV")
    _add_ga_flags(s)

    b = sub.add_parser("bench", help="GA vs LSH on shared random instances")
    b.add_argument("--sizes", type=_int_list, default=[8, 17, 23, 28, 39, 44, 49, 54, 59, 69, 79, 89, 100])
    b.add_argument("--procs", type=_int_list, default=[4])
    b.add_argument("--reps", type=_positive, default=10)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--jobs", type=_positive, default=1)
    b.add_argument("--out", type=Path, help="CSV path (default: stdout)")
    _add_ga_flags(b)

    c = sub.add_parser("gantt", help="render a schedule file")
    c.add_argument("--graph", type=Path, required=True)
    c.add_argument("--schedule", type=Path, required=True)
    c.add_argument("--format", choices=("text", "svg"), default="text")
    c.add_argument("--out", type=Path, help="output path (default: stdout)")
    return parser


def _read_graph(path):
    try:
        return parse_graph(path.read_bytes())
    except OSError as exc:
        raise UsageError(f"cannot read graph {path}: {exc.strerror}")


def cmd_gen(args, out):
    try:
        spec = GenSpec(args.n, args.succ_min, args.succ_max, args.et_min, args.et_max, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc))
    graph = generate_random(spec)
    args.out.write_text(serialize_graph(graph), encoding="utf-8")
    print(f"n={graph.n} edges={len(graph.edges)} t_cp={critical_path_length(graph)}", file=out)


def cmd_solve(args, out):
    graph = _read_graph(args.graph)
    report, payload = solve(
        graph, args.procs, args.algo, instance_id=args.graph.stem, seed=args.seed,
        config=_ga_config(args), policy=PriorityPolicy(args.policy, args.seed),
        budget=args.budget,
    )
    if args.algo == "ga":
        chromosome = payload.best
        if args.history:
            args.history.write_text(payload.history_csv(), encoding="utf-8")
    elif args.algo == "lsh":
        chromosome = chart_to_chromosome(payload)
    else:
        chromosome = payload.chromosome
    if args.out:
        args.out.write_text(chromosome_to_file(chromosome), encoding="utf-8")
    print(
        f"algo={report.algo} policy={report.policy} makespan={report.makespan} "
        f"lower_bound={report.lower_bound} generations={report.generations} "
        f"wall_ms={report.wall_ms:.1f}",
        file=out,
    )


def cmd_bench(args, out):
    config = _ga_config(args)
    reports = run_bench(args.sizes, args.procs, args.reps, seed=args.seed, config=config, jobs=args.jobs)
    text = to_csv(reports)
    if args.out:
        args.out.write_text(text, encoding="utf-8")
        print(summary_table(reports), end="", file=out)
    else:
        out.write(text)
        print(summary_table(reports), end="", file=sys.stderr)


def cmd_gantt(args, out):
    graph = _read_graph(args.graph)
    try:
        text = args.schedule.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read schedule {args.schedule}: {exc.strerror}")
    chart = evaluate(graph, chromosome_from_file(text, graph))
    rendered = gantt_svg(chart) if args.format == "svg" else gantt_text(chart)
    if args.out:
        args.out.write_text(rendered, encoding="utf-8")
    else:
        out.write(rendered)


COMMANDS = {"gen": cmd_gen, "solve": cmd_solve, "bench": cmd_bench, "gantt": cmd_gantt}


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args, out)
    except (UsageError, GraphError, ScheduleError, BudgetExceeded, OSError) as exc:
        print(f"dagsched {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
