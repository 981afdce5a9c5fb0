"""Command-line front end.

Subcommands: gen, solve, code, volume, predict, markov, bench. Solving runs
exit 10 on SAT and 20 on UNSAT (solver-competition convention); other
successful runs exit 0, usage or runtime errors exit 1. All output is
deterministic given flags plus seed; when a randomized subcommand draws a
fresh seed, it prints it to stderr so the run can be reproduced.
"""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from . import analysis, covercode, formula as fmod, search
from .colorgraph import ColorGraph, complete, directed_cycle, hypercube, parse_graph_file, profile
from .volume import shell_counts

__all__ = ["main", "run_bench", "BenchRow"]

EXIT_SAT = 10
EXIT_UNSAT = 20


def _graph_from_flag(name: str, d: int) -> ColorGraph:
    if name == "complete":
        return complete(d)
    if name == "cycle":
        return directed_cycle(d)
    if name == "hypercube":
        ell = d.bit_length() - 1
        if 1 << ell != d:
            raise ValueError(f"hypercube graph needs d to be a power of 2, got {d}")
        return hypercube(ell)
    if name.startswith("file:"):
        path = name[len("file:") :]
        with open(path, encoding="utf-8") as fh:
            g = parse_graph_file(fh.read())
        if g.d != d:
            raise ValueError(f"graph file has {g.d} colors, expected {d}")
        profile(g)  # reject graphs the volume and code formulas cannot handle
        return g
    raise ValueError(f"unknown graph {name!r} (complete|cycle|hypercube|file:<path>)")


def _resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    fresh = random.SystemRandom().getrandbits(63)
    print(f"seed: {fresh}", file=sys.stderr)
    return fresh


def _write_output(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _format_witness(result: search.SolveResult) -> str:
    if result.status == "sat":
        assert result.assignment is not None
        colors = " ".join(str(c) for c in result.assignment)
        return f"s SATISFIABLE\nv {colors}\n"
    if result.status == "unsat":
        return "s UNSATISFIABLE\n"
    return "s UNKNOWN\n"


def cmd_gen(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    rng = random.Random(seed)
    planted = None
    if args.planted:
        planted = tuple(rng.randint(1, args.d) for _ in range(args.n))
        print("planted:", " ".join(str(c) for c in planted), file=sys.stderr)
    f = fmod.generate_random(args.n, args.d, args.k, args.m, rng.getrandbits(64), planted)
    _write_output(fmod.serialize_instance(f), args.output)
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    with open(args.instance, encoding="utf-8") as fh:
        f = fmod.parse_instance(fh.read())
    g = _graph_from_flag(args.graph, f.d)

    if args.method == "det":
        result = search.det_solve(f, g, block_cap=args.block_cap, jobs=args.jobs)
    elif args.method == "schoening":
        seed = _resolve_seed(args.seed)
        result = search.schoening_solve(
            f, g, args.reps, steps_multiplier=args.steps_mult, rng=seed, jobs=args.jobs
        )
    elif args.method == "brute":
        witness = fmod.brute_force_solve(f)
        status = "sat" if witness is not None else "unsat"
        result = search.SolveResult(status, witness, search.SearchStats())
    else:
        raise ValueError(f"unknown method {args.method!r}")

    if args.verbose:
        st = result.stats
        print(
            f"stats: nodes={st.nodes_visited} balls={st.balls_searched} "
            f"reps={st.repetitions} steps={st.steps}",
            file=sys.stderr,
        )
    if args.verify_oracle:
        oracle = fmod.brute_force_solve(f)
        if result.status == "sat" and oracle is None:
            raise RuntimeError("solver returned SAT but exhaustive search finds no witness")
        if result.status == "unsat" and oracle is not None:
            raise RuntimeError("solver returned UNSAT but exhaustive search finds a witness")
    _write_output(_format_witness(result), args.output)
    if result.status == "sat":
        return EXIT_SAT
    if result.status == "unsat":
        return EXIT_UNSAT
    return 0


def cmd_code(args: argparse.Namespace) -> int:
    g = _graph_from_flag(args.graph, args.d)
    code = covercode.build_code(g, args.n, args.k, block_cap=args.block_cap)
    _write_output(covercode.format_code_file(code), args.output)
    return 0


def cmd_volume(args: argparse.Namespace) -> int:
    g = _graph_from_flag(args.graph, args.d)
    table = shell_counts(profile(g), args.n)
    if args.r is None:
        print("shells", *table.counts)
    else:
        print("shells", *table.counts[: args.r + 1])
        print("volume", table.volume(args.r))
    return 0


def cmd_predict(args: argparse.Namespace) -> int:
    p = profile(_graph_from_flag(args.graph, args.d)) if args.graph else None
    report = analysis.base_report(args.d, args.k, p)
    print(f"d {report.d} k {report.k}")
    rows = [
        ("schoening", report.schoening_base),
        ("det-complete", report.det_complete_base),
        ("det-cycle", report.det_cycle_base),
    ]
    if report.graph_base is not None:
        rows.append(("det-graph", report.graph_base))
    for name, base in rows:
        print(f"{name} {float(base):.6f} ({base})")
    print(f"recommended {report.recommended_graph}")
    return 0


def cmd_markov(args: argparse.Namespace) -> int:
    sol = analysis.solve_lambda(args.d, args.k)
    print(f"lambda {sol.value:.12f} residual {sol.residual:.3e}")
    pj = analysis.reach_probability(args.d, args.k, args.j)
    print(f"P[{args.j}] {pj:.12f}")
    seed = _resolve_seed(args.seed)
    freq, stderr = analysis.markov_simulate(
        args.d, args.k, args.j, args.max_steps, args.trials, seed
    )
    print(f"simulated {freq:.6f} stderr {stderr:.6f} trials {args.trials} max-steps {args.max_steps}")
    return 0


@dataclass(frozen=True)
class BenchRow:
    instance: str
    method: str
    graph: str
    result: str
    nodes: int
    balls: int
    reps: int
    millis: float


def run_bench(
    d: int,
    k: int,
    n: int,
    m: int,
    count: int,
    seed: int,
    block_cap: int = covercode.DEFAULT_BLOCK_CAP,
    reps: int = 50,
    steps_mult: Optional[int] = None,
    jobs: int = 1,
) -> list[BenchRow]:
    """Run a seeded instance family through both methods and both graphs.

    Instances alternate between planted (guaranteed satisfiable) and
    unrestricted random. Codes are built once per graph and reused.
    """
    master = random.Random(seed)
    rows: list[BenchRow] = []
    graphs = [("complete", complete(d)), ("cycle", directed_cycle(d))]
    for i in range(count):
        inst_seed = master.getrandbits(64)
        planted = None
        if i % 2 == 0:
            planted_rng = random.Random(master.getrandbits(64))
            planted = tuple(planted_rng.randint(1, d) for _ in range(n))
        f = fmod.generate_random(n, d, k, m, inst_seed, planted)
        name = f"d{d}k{k}n{n}m{m}i{i}"
        for graph_name, g in graphs:
            start = time.perf_counter()
            det = search.det_solve(f, g, block_cap=block_cap, jobs=jobs)
            det_ms = (time.perf_counter() - start) * 1000
            rows.append(
                BenchRow(name, "det", graph_name, det.status, det.stats.nodes_visited,
                         det.stats.balls_searched, 0, round(det_ms, 3))
            )
            start = time.perf_counter()
            sch = search.schoening_solve(
                f, g, reps, steps_multiplier=steps_mult, rng=master.getrandbits(64), jobs=jobs
            )
            sch_ms = (time.perf_counter() - start) * 1000
            rows.append(
                BenchRow(name, "schoening", graph_name, sch.status, sch.stats.steps,
                         0, sch.stats.repetitions, round(sch_ms, 3))
            )
    return rows


def cmd_bench(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    rows = run_bench(
        args.d, args.k, args.n, args.m, args.count, seed,
        block_cap=args.block_cap, reps=args.reps, steps_mult=args.steps_mult, jobs=args.jobs,
    )
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["instance", "method", "graph", "result", "nodes", "balls", "reps", "millis"])
    for row in rows:
        writer.writerow(
            [row.instance, row.method, row.graph, row.result, row.nodes, row.balls, row.reps, row.millis]
        )
    _write_output(buf.getvalue(), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dkcsp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, *names: str) -> None:
        if "graph" in names:
            p.add_argument("--graph", default="complete",
                           help="complete|cycle|hypercube|file:<path> (default complete)")
        if "d" in names:
            p.add_argument("--d", type=int, required=True, help="number of colors")
        if "k" in names:
            p.add_argument("--k", type=int, required=True, help="max constraint width")
        if "n" in names:
            p.add_argument("--n", type=int, required=True, help="number of variables")
        if "seed" in names:
            p.add_argument("--seed", type=int, default=None, help="RNG seed (fresh if omitted)")
        if "block-cap" in names:
            p.add_argument("--block-cap", type=int, default=covercode.DEFAULT_BLOCK_CAP,
                           help="max ground-set size per covering-code block")
        if "jobs" in names:
            p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
        if "output" in names:
            p.add_argument("-o", "--output", default=None, help="output file (default stdout)")

    p = sub.add_parser("gen", help="generate a random instance")
    add_common(p, "n", "d", "k", "seed", "output")
    p.add_argument("--m", type=int, required=True, help="number of constraints")
    p.add_argument("--planted", action="store_true",
                   help="resample constraints falsified by a hidden random assignment")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("instance", help="instance file path")
    p.add_argument("--method", choices=["det", "schoening", "brute"], default="det")
    add_common(p, "graph", "seed", "block-cap", "jobs", "output")
    p.add_argument("--reps", type=int, default=100, help="random-walk restarts")
    p.add_argument("--steps-mult", type=int, default=None,
                   help="walk length multiplier c, steps = c*n (default 3(d-1))")
    p.add_argument("--verify-oracle", action="store_true",
                   help="cross-check the answer against exhaustive search")
    p.add_argument("-v", "--verbose", action="count", default=0)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("code", help="build and print a covering code")
    add_common(p, "graph", "d", "n", "k", "block-cap", "output")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("volume", help="print shell counts and ball volume")
    add_common(p, "graph", "d", "n")
    p.add_argument("--r", type=int, default=None, help="ball radius")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("predict", help="print per-variable running-time bases")
    add_common(p, "d", "k")
    p.add_argument("--graph", default=None,
                   help="also report the base for this graph")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("markov", help="walk analysis: lambda, reach probability, simulation")
    add_common(p, "d", "k", "seed")
    p.add_argument("--j", type=int, default=2, help="start distance (default 2)")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--max-steps", type=int, default=10_000)
    p.set_defaults(func=cmd_markov)

    p = sub.add_parser("bench", help="CSV benchmark over both methods and both graphs")
    add_common(p, "d", "k", "n", "seed", "block-cap", "jobs", "output")
    p.add_argument("--m", type=int, required=True, help="constraints per instance")
    p.add_argument("--count", type=int, default=10, help="instances (default 10)")
    p.add_argument("--reps", type=int, default=50, help="random-walk restarts (default 50)")
    p.add_argument("--steps-mult", type=int, default=None)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
