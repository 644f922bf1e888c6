"""Seed-set selection for one-round and full influence maximization.

Four selectors over a common budget: plain greedy on the chosen objective,
the past-aware centrality heuristic (scoring each step with the
fixed-coalition-size closed form at size budget-1), a static top-degree
baseline, and exhaustive search behind an enumeration guard. All ties break
toward the smallest node id, so every selector is deterministic.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass

import numpy as np

from ._validation import check_budget, check_threshold
from .contagion import (
    full_influence,
    marginal_full,
    one_round_influence,
    settle,
    state_from_seeds,
)
from .graphs import Graph
from .scoring import _dirac_score_kernel

__all__ = [
    "SeedSolution",
    "greedy_select",
    "pagtc_delta_select",
    "degree_select",
    "optimal_bruteforce",
]

OBJECTIVES = ("one_round", "full")


@dataclass(frozen=True)
class SeedSolution:
    """Selected seeds in selection order, with both influence values."""

    seeds: tuple[int, ...]
    one_round_value: int
    full_value: int
    algorithm: str
    runtime: float

    def normalized(self, n: int) -> tuple[float, float]:
        """(one-round, full) influence as percentages of the node count."""
        return 100.0 * self.one_round_value / n, 100.0 * self.full_value / n


def _check_objective(objective: str) -> str:
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}, got {objective!r}")
    return objective


def _finish(graph: Graph, k: int, seeds: list[int], algorithm: str, t0: float) -> SeedSolution:
    return SeedSolution(
        seeds=tuple(seeds),
        one_round_value=one_round_influence(graph, seeds, k),
        full_value=full_influence(graph, seeds, k),
        algorithm=algorithm,
        runtime=time.perf_counter() - t0,
    )


def greedy_select(graph: Graph, k: int, budget: int, objective: str = "one_round") -> SeedSolution:
    """Iteratively add the node with the largest marginal gain.

    ``objective="one_round"`` uses O(deg)-time one-round marginals (O(r |E|)
    total); ``objective="full"`` re-simulates the cascade from the frozen
    fixed point of the current selection for every candidate.
    """
    k = check_threshold(k)
    budget = check_budget(budget, graph.node_count)
    _check_objective(objective)
    t0 = time.perf_counter()
    n = graph.node_count
    adj = graph.adjacency_matrix()
    seeds: list[int] = []

    if objective == "one_round":
        in_s = np.zeros(n, dtype=bool)
        counts = np.zeros(n, dtype=np.int64)
        for _ in range(budget):
            helper = (~in_s) & (counts == k - 1)
            gain = (counts < k).astype(np.int64) + adj.dot(helper.astype(np.int64))
            gain[in_s] = -1
            u = int(np.argmax(gain))
            seeds.append(u)
            in_s[u] = True
            counts[graph.neighbors(u)] += 1
        return _finish(graph, k, seeds, "greedy", t0)

    chosen = np.zeros(n, dtype=bool)
    base = settle(state_from_seeds(graph, []), k)
    for _ in range(budget):
        best_gain, best_u = -1, -1
        for u in range(n):
            if chosen[u]:
                continue
            gain = marginal_full(base, u, k)
            if gain > best_gain:
                best_gain, best_u = gain, u
        seeds.append(best_u)
        chosen[best_u] = True
        base = settle(state_from_seeds(graph, seeds), k)
    return _finish(graph, k, seeds, "greedy-full", t0)


def pagtc_delta_select(graph: Graph, k: int, budget: int) -> SeedSolution:
    """Select seeds by past-aware centrality at fixed coalition size budget-1.

    At step j the score of a candidate is its expected one-round marginal
    over a uniformly random coalition of size budget-1 containing the j-1
    already-selected seeds; the final step therefore coincides with a greedy
    step. O(r k |E|) total; the per-node coalition statistics are updated
    incrementally (only neighbors of the chosen node change).
    """
    k = check_threshold(k)
    budget = check_budget(budget, graph.node_count)
    t0 = time.perf_counter()
    n = graph.node_count
    adj = graph.adjacency_matrix()
    size = budget - 1

    deg = graph.degrees.astype(np.int64)
    inside = np.zeros(n, dtype=np.int64)  # |N(v) & S|, maintained incrementally
    in_s = np.zeros(n, dtype=bool)
    seeds: list[int] = []

    for step_idx in range(budget):
        k0 = step_idx
        out = deg - inside
        slk = (k - 1) - inside
        scores = _dirac_score_kernel(adj, n, k, k0, size, out, slk, in_s)
        scores[in_s] = -np.inf
        u = int(np.argmax(scores))
        seeds.append(u)
        in_s[u] = True
        inside[graph.neighbors(u)] += 1
    return _finish(graph, k, seeds, "pagtc-delta", t0)


def degree_select(graph: Graph, k: int, budget: int) -> SeedSolution:
    """Static baseline: the budget highest-degree nodes, ties by smallest id."""
    k = check_threshold(k)
    budget = check_budget(budget, graph.node_count)
    t0 = time.perf_counter()
    ids = np.arange(graph.node_count)
    order = np.lexsort((ids, -graph.degrees))
    return _finish(graph, k, [int(u) for u in order[:budget]], "degree", t0)


def optimal_bruteforce(
    graph: Graph,
    k: int,
    budget: int,
    objective: str = "one_round",
    guard: int = 10**7,
    _chunk: int = 16384,
) -> SeedSolution:
    """Exhaustively evaluate every budget-subset and return a maximizer.

    Returns the lexicographically smallest maximizer. Refuses to run when
    C(n, budget) exceeds ``guard``.
    """
    k = check_threshold(k)
    budget = check_budget(budget, graph.node_count)
    _check_objective(objective)
    n = graph.node_count
    total = math.comb(n, budget)
    if total > guard:
        raise ValueError(
            f"C({n},{budget})={total} subsets exceed the enumeration guard {guard}; "
            "use a heuristic selector instead"
        )
    t0 = time.perf_counter()
    combos = itertools.combinations(range(n), budget)

    if objective == "one_round":
        dense = np.zeros((n, n), dtype=np.int16)
        for u in range(n):
            dense[u, graph.neighbors(u)] = 1
        best_val, best_set = -1, None
        while True:
            chunk = list(itertools.islice(combos, _chunk))
            if not chunk:
                break
            arr = np.array(chunk, dtype=np.int64)
            counts = dense[arr].sum(axis=1)  # (m, n) active-neighbor counts
            member = np.zeros((len(chunk), n), dtype=bool)
            member[np.arange(len(chunk))[:, None], arr] = True
            vals = budget + ((counts >= k) & ~member).sum(axis=1)
            i = int(np.argmax(vals))
            if vals[i] > best_val:
                best_val, best_set = int(vals[i]), chunk[i]
        return _finish(graph, k, list(best_set), "optimal", t0)

    best_val, best_set = -1, None
    for combo in combos:
        val = full_influence(graph, combo, k)
        if val > best_val:
            best_val, best_set = val, combo
    return _finish(graph, k, list(best_set), "optimal", t0)
