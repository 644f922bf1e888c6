"""Command-line interface: scoring, simulation, optimization, targeting, benchmarks.

Commands emit machine-readable tables (csv, tsv, or a json envelope that
validates against ``pagtc/schemas/output.schema.json``). Exit codes: 0 on
success, 2 on usage errors, 1 on computational errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from fractions import Fraction

import numpy as np

from .contagion import full_influence, state_from_seeds, step
from .graphs import Graph, generate_navigable_small_world, load_bundled, load_edge_list, write_edge_list
from .scoring import (
    SizeDistribution,
    brute_force_pagtc,
    gtc_closed_form,
    monte_carlo_pagtc,
    semivalue_dirac_pagtc,
    semivalue_dirac_pagtc_exact,
    semivalue_general_pagtc,
    shapley_pagtc,
    shapley_pagtc_exact,
)
from .seeding import degree_select, greedy_select, optimal_bruteforce, pagtc_delta_select
from .targeting import TargetingStrategy, run_targeted, trace_export

__all__ = ["main", "entrypoint"]


class UsageError(ValueError):
    """Bad command-line arguments (exit code 2)."""


# -- plumbing ---------------------------------------------------------------


def _parse_graph(args) -> Graph:
    spec = args.graph
    kind, _, rest = spec.partition(":")
    if kind == "bundled" and rest:
        return load_bundled(rest)
    if kind == "file" and rest:
        return load_edge_list(rest, directed_input=getattr(args, "directed_input", False))
    if kind == "gen":
        family, _, params = rest.partition(":")
        if family != "small-world":
            raise UsageError(f"unknown generator family {family!r}; expected small-world")
        parts = params.split(",") if params else []
        if len(parts) not in (3, 4):
            raise UsageError("generator spec must be gen:small-world:side,q,exponent[,seed]")
        try:
            side, q, exp = int(parts[0]), int(parts[1]), float(parts[2])
            seed = int(parts[3]) if len(parts) == 4 else getattr(args, "seed", 0)
        except ValueError as exc:
            raise UsageError(f"bad generator parameters {params!r}: {exc}") from None
        return generate_navigable_small_world(side, q, exp, rng_seed=seed)
    raise UsageError(
        f"bad graph spec {spec!r}; expected bundled:NAME, file:PATH, or gen:small-world:side,q,exp,seed"
    )


def _resolve_nodes(graph: Graph, text: str | None, flag: str) -> list[int]:
    """Resolve a comma-separated list of labels or dense ids."""
    if not text:
        return []
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            out.append(graph.id_of(tok))
            continue
        except KeyError:
            pass
        try:
            u = int(tok)
        except ValueError:
            raise UsageError(f"{flag}: {tok!r} is neither a label nor an integer id") from None
        if not 0 <= u < graph.node_count:
            raise UsageError(f"{flag}: id {u} out of range 0..{graph.node_count - 1}")
        out.append(u)
    return out


def _emit(args, command: str, columns: list[str], rows: list[list], meta: dict) -> None:
    out = sys.stdout
    if args.format == "json":
        json.dump({"command": command, "meta": meta, "columns": columns, "rows": rows}, out, indent=2)
        out.write("\n")
        return
    delimiter = "\t" if args.format == "tsv" else ","
    writer = csv.writer(out, delimiter=delimiter, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)


def _pct(value: int, n: int) -> float:
    return round(100.0 * value / n, 1)


def _ids_and_labels(graph: Graph, nodes) -> tuple[str, str]:
    nodes = list(nodes)
    return " ".join(str(u) for u in nodes), " ".join(graph.label(u) for u in nodes)


# -- centrality ----------------------------------------------------------------


def cmd_centrality(args) -> int:
    graph = _parse_graph(args)
    s0 = _resolve_nodes(graph, args.s0, "--s0")
    dist = SizeDistribution.parse(args.beta)
    if args.samples:
        scores = monte_carlo_pagtc(graph, s0, args.k, dist, args.samples,
                                   rng_seed=args.seed, threads=args.threads)
    else:
        resolved = dist.resolve(graph.node_count, len(s0))
        if resolved.kind == "shapley":
            scores = shapley_pagtc(graph, s0, args.k) if s0 else gtc_closed_form(graph, args.k)
        elif resolved.kind == "dirac":
            scores = semivalue_dirac_pagtc(graph, s0, args.k, resolved.s)
        else:
            scores = semivalue_general_pagtc(graph, s0, args.k, resolved)

    meta = {"graph": args.graph, "n": graph.node_count, "m": graph.edge_count,
            "k": args.k, "s0": " ".join(map(str, s0)), "beta": dist.label()}
    if args.oracle:
        meta.update(_oracle_check(graph, s0, args.k, dist, scores, args.guard))
    rows = [[int(u), graph.label(int(u)), float(scores.values[u])] for u in scores.ranking()]
    _emit(args, "centrality", ["id", "label", "score"], rows, meta)
    return 0


def _oracle_check(graph, s0, k, dist, scores, guard) -> dict:
    if graph.node_count > guard:
        return {"oracle": f"skipped: n={graph.node_count} exceeds guard {guard}"}
    resolved = dist.resolve(graph.node_count, len(s0))
    exact_closed = None
    if resolved.kind == "shapley":
        exact_closed = shapley_pagtc_exact(graph, s0, k)
    elif resolved.kind == "dirac":
        exact_closed = semivalue_dirac_pagtc_exact(graph, s0, k, resolved.s)
    max_dev = Fraction(0) if exact_closed is not None else 0.0
    for u in scores.defined_nodes():
        ref = brute_force_pagtc(graph, s0, k, resolved, int(u), guard=guard)
        if exact_closed is not None:
            max_dev = max(max_dev, abs(exact_closed[int(u)] - ref))
        else:
            max_dev = max(max_dev, abs(float(scores.values[u]) - float(ref)))
    mode = "exact" if exact_closed is not None else "float"
    return {"oracle": "ok", "oracle_mode": mode, "oracle_max_deviation": str(max_dev)}


# -- simulate --------------------------------------------------------------------


def cmd_simulate(args) -> int:
    graph = _parse_graph(args)
    seeds = _resolve_nodes(graph, args.s0, "--s0")
    if not seeds:
        raise UsageError("--s0 must name at least one seed node")
    state = state_from_seeds(graph, seeds)
    ids, labels = _ids_and_labels(graph, seeds)
    rows = [[0, state.active_count, len(seeds), labels]]
    while True:
        nxt = step(state, args.k)
        newly = np.flatnonzero(nxt.active & ~state.active)
        if newly.size == 0:
            break
        _, newl = _ids_and_labels(graph, newly.tolist())
        rows.append([nxt.round_index, nxt.active_count, int(newly.size), newl])
        state = nxt
    meta = {"graph": args.graph, "n": graph.node_count, "k": args.k, "s0": ids,
            "final_active": state.active_count, "rounds": len(rows) - 1}
    _emit(args, "simulate", ["round", "active_count", "newly_count", "newly_nodes"], rows, meta)
    return 0


# -- maximize --------------------------------------------------------------------


_ALGORITHMS = ("greedy", "pagtc-delta", "degree", "optimal")


def _run_alg(graph, alg, k, r, objective, guard):
    if alg == "greedy":
        return greedy_select(graph, k, r, objective)
    if alg == "pagtc-delta":
        return pagtc_delta_select(graph, k, r)
    if alg == "degree":
        return degree_select(graph, k, r)
    if alg == "optimal":
        return optimal_bruteforce(graph, k, r, objective, guard=guard)
    raise UsageError(f"unknown algorithm {alg!r}; expected one of {_ALGORITHMS}")


def cmd_maximize(args) -> int:
    graph = _parse_graph(args)
    n = graph.node_count
    if not 0 < args.r < n:
        raise UsageError(f"--r must satisfy 0 < r < n={n}, got {args.r}")
    objective = args.objective.replace("-", "_")
    algs = list(_ALGORITHMS) if args.all else [args.alg]
    rows = []
    for alg in algs:
        sol = _run_alg(graph, alg, args.k, args.r, objective, args.guard)
        ids, labels = _ids_and_labels(graph, sol.seeds)
        rows.append([
            sol.algorithm, args.k, args.r, objective, ids, labels,
            sol.one_round_value, _pct(sol.one_round_value, n),
            sol.full_value, _pct(sol.full_value, n),
            round(sol.runtime, 6),
        ])
    meta = {"graph": args.graph, "n": n, "m": graph.edge_count}
    _emit(args, "maximize",
          ["algorithm", "k", "r", "objective", "seed_ids", "seed_labels",
           "one_round_value", "one_round_pct", "full_value", "full_pct", "runtime_s"],
          rows, meta)
    return 0


# -- target ----------------------------------------------------------------------


def cmd_target(args) -> int:
    graph = _parse_graph(args)
    strategy = TargetingStrategy.parse(args.strategy)
    t0 = time.perf_counter()
    trace = run_targeted(graph, args.k, strategy)
    elapsed = time.perf_counter() - t0
    n = graph.node_count
    ids, labels = _ids_and_labels(graph, trace.chosen)
    rows = [[strategy.label(), args.k, trace.rounds, _pct(trace.rounds, n), ids, labels,
             round(elapsed, 6)]]
    meta = {"graph": args.graph, "n": n, "m": graph.edge_count}
    if args.growth:
        with open(args.growth, "w", encoding="utf-8") as fh:
            for rnd, count in trace_export(trace):
                fh.write(f"{rnd} {count}\n")
        meta["growth_file"] = args.growth
    _emit(args, "target",
          ["strategy", "k", "rounds", "rounds_pct", "chosen_ids", "chosen_labels", "runtime_s"],
          rows, meta)
    return 0


# -- gen -------------------------------------------------------------------------


def cmd_gen(args) -> int:
    graph = generate_navigable_small_world(args.side, args.long_range, args.exponent,
                                           rng_seed=args.seed)
    buf = io.StringIO()
    buf.write(f"# navigable small-world: side={args.side} q={args.long_range} "
              f"exponent={args.exponent:g} seed={args.seed} n={graph.node_count} m={graph.edge_count}\n")
    write_edge_list(graph, buf)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


# -- bench -----------------------------------------------------------------------


def cmd_bench(args) -> int:
    if args.suite == "table1":
        return _bench_table1(args)
    if args.suite == "table2":
        return _bench_table2(args)
    if args.suite == "fig3":
        return _bench_fig3(args)
    raise UsageError(f"unknown suite {args.suite!r}; available: table1, table2, fig3")


def _bench_table1(args) -> int:
    graph = _parse_graph(args)
    n = graph.node_count
    rows = []
    for k in (2, 3, 4):
        r = 2 * k
        row = [args.graph, k, r]
        t0 = time.perf_counter()
        for objective in ("one_round", "full"):
            for alg in ("greedy", "pagtc-delta", "optimal"):
                try:
                    sol = _run_alg(graph, alg, k, r, objective, args.guard)
                    value = sol.one_round_value if objective == "one_round" else sol.full_value
                    row += [value, _pct(value, n)]
                except ValueError as exc:
                    print(f"bench cell failed (k={k}, {alg}, {objective}): {exc}", file=sys.stderr)
                    row += [None, None]
        row.append(round(time.perf_counter() - t0, 6))
        rows.append(row)
    _emit(args, "bench",
          ["graph", "k", "r",
           "greedy_one_round", "greedy_one_round_pct",
           "pagtc_one_round", "pagtc_one_round_pct",
           "opt_one_round", "opt_one_round_pct",
           "greedy_full", "greedy_full_pct",
           "pagtc_full", "pagtc_full_pct",
           "opt_full", "opt_full_pct",
           "runtime_s"],
          rows, {"suite": "table1", "n": n, "m": graph.edge_count})
    return 0


def _bench_table2(args) -> int:
    graph = _parse_graph(args)
    n = graph.node_count
    rows = []
    for k in (2, 3, 4):
        for strat in ("degree", "greedy", "greedy-full", "pagtc-shapley"):
            try:
                t0 = time.perf_counter()
                trace = run_targeted(graph, k, TargetingStrategy.parse(strat))
                rows.append([args.graph, k, strat, trace.rounds, _pct(trace.rounds, n),
                             round(time.perf_counter() - t0, 6)])
            except ValueError as exc:
                print(f"bench cell failed (k={k}, {strat}): {exc}", file=sys.stderr)
    _emit(args, "bench", ["graph", "k", "strategy", "rounds", "rounds_pct", "runtime_s"],
          rows, {"suite": "table2", "n": n, "m": graph.edge_count})
    return 0


def _bench_fig3(args) -> int:
    sizes = [int(x) for x in args.sizes.split(",") if x]
    rows = []
    for size in sizes:
        side = int(math.isqrt(size))
        if side * side != size:
            raise UsageError(f"fig3 sizes must be perfect squares, got {size}")
        graph = generate_navigable_small_world(side, 3, 2.0, rng_seed=args.seed)
        n = graph.node_count
        r = math.ceil(0.1 * n)
        try:
            pd = pagtc_delta_select(graph, args.k, r)
            gf = greedy_select(graph, args.k, r, "full")
        except ValueError as exc:
            print(f"bench cell failed (n={n}): {exc}", file=sys.stderr)
            continue
        ratio = round(pd.full_value / gf.full_value, 4) if gf.full_value else None
        rows.append([n, args.k, r, "greedy-full", gf.full_value, _pct(gf.full_value, n),
                     round(gf.runtime, 6), None])
        rows.append([n, args.k, r, "pagtc-delta", pd.full_value, _pct(pd.full_value, n),
                     round(pd.runtime, 6), ratio])
    _emit(args, "bench",
          ["n", "k", "r", "algorithm", "full_value", "full_pct", "runtime_s", "influence_ratio"],
          rows, {"suite": "fig3", "sizes": sizes, "seed": args.seed})
    return 0


# -- parser ------------------------------------------------------------------------


def _add_common(p, graph=True):
    if graph:
        p.add_argument("--graph", required=True,
                       help="bundled:NAME | file:PATH | gen:small-world:side,q,exp[,seed]")
        p.add_argument("--directed-input", action="store_true",
                       help="treat file input as directed and symmetrize")
    p.add_argument("--format", choices=("csv", "json", "tsv"), default="csv")
    p.add_argument("--seed", type=int, default=0, help="seed for all randomized paths")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--guard", type=int, default=None, help="enumeration guard override")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pagtc",
                                     description="Past-aware game-theoretic centrality tools")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("centrality", help="score nodes with a closed-form or sampled scorer")
    _add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s0", default="", help="comma-separated conditioning nodes (labels or ids)")
    p.add_argument("--beta", default="shapley", help="shapley | dirac:S | uniform:LO,HI | trunc:C")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against the enumeration oracle (small graphs)")
    p.add_argument("--samples", type=int, default=0,
                   help="use the Monte-Carlo estimator with this many samples")
    p.set_defaults(func=cmd_centrality, default_guard=22)

    p = sub.add_parser("simulate", help="run the contagion cascade to its fixed point")
    _add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s0", required=True, help="comma-separated seed nodes (labels or ids)")
    p.set_defaults(func=cmd_simulate, default_guard=22)

    p = sub.add_parser("maximize", help="select a seed set under a budget")
    _add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True, help="seed budget")
    p.add_argument("--alg", default="pagtc-delta", help=" | ".join(_ALGORITHMS))
    p.add_argument("--objective", choices=("one-round", "full"), default="one-round")
    p.add_argument("--all", action="store_true", help="run every algorithm")
    p.set_defaults(func=cmd_maximize, default_guard=10**7)

    p = sub.add_parser("target", help="dynamically targeted contagion until saturation")
    _add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--strategy", default="pagtc-shapley",
                   help="degree | greedy | greedy-full | pagtc-shapley | pagtc-trunc:C")
    p.add_argument("--growth", default="", help="write per-round 'round count' lines here")
    p.set_defaults(func=cmd_target, default_guard=22)

    p = sub.add_parser("gen", help="emit a navigable small-world graph as an edge list")
    p.add_argument("--side", type=int, required=True)
    p.add_argument("--long-range", type=int, default=1, dest="long_range")
    p.add_argument("--exponent", type=float, default=2.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="", help="output path (default stdout)")
    p.set_defaults(func=cmd_gen, default_guard=22)

    p = sub.add_parser("bench", help="run a named experiment grid")
    _add_common(p, graph=False)
    p.add_argument("--suite", required=True, help="table1 | table2 | fig3")
    p.add_argument("--graph", default="bundled:flor-families",
                   help="graph for table1/table2 suites")
    p.add_argument("--k", type=int, default=5, help="threshold for the fig3 suite")
    p.add_argument("--sizes", default="100,400,900", help="fig3 node counts (perfect squares)")
    p.set_defaults(func=cmd_bench, default_guard=10**7)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "guard", None) is None and hasattr(args, "default_guard"):
        args.guard = args.default_guard
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
