"""K-complex contagion dynamics and influence set functions.

An inactive node becomes active once at least ``k`` of its neighbors are
active; rounds are synchronous. The one-round influence of a seed set S
counts S plus the nodes it activates in a single round; the full influence
counts the active set at the cascade's fixed point. Marginal-contribution
queries run in O(deg) / resume-from-fixed-point time so that greedy-style
consumers stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from ._validation import check_node_ids, check_threshold, node_mask
from .graphs import Graph

__all__ = [
    "ContagionState",
    "state_from_seeds",
    "step",
    "settle",
    "one_round_influence",
    "full_influence",
    "marginal_one_round",
    "marginal_full",
]


@dataclass(frozen=True)
class ContagionState:
    """Snapshot of a cascade: active set plus per-node active-neighbor counts."""

    graph: Graph
    active: np.ndarray  # bool, shape (n,)
    counts: np.ndarray  # int64, counts[v] == |N(v) & active|
    round_index: int = 0
    seed_ids: frozenset[int] = frozenset()

    @property
    def active_count(self) -> int:
        return int(np.count_nonzero(self.active))

    def active_nodes(self) -> np.ndarray:
        return np.flatnonzero(self.active)

    def is_fixed_point(self, k: int) -> bool:
        return not bool(np.any(~self.active & (self.counts >= k)))


def state_from_seeds(graph: Graph, seeds: Iterable[int]) -> ContagionState:
    """Initial state with ``seeds`` active and counters built by recount."""
    ids = check_node_ids(graph, seeds, name="seeds")
    active = node_mask(graph.node_count, ids)
    counts = graph.adjacency_matrix().dot(active.astype(np.int64))
    return ContagionState(graph, active, counts, round_index=0, seed_ids=frozenset(ids.tolist()))


def step(state: ContagionState, k: int) -> ContagionState:
    """One synchronous round: all inactive nodes with >= k active neighbors flip.

    At a fixed point the returned active set equals the input's (the round
    counter still advances).
    """
    k = check_threshold(k)
    newly = ~state.active & (state.counts >= k)
    if not newly.any():
        return replace(state, round_index=state.round_index + 1)
    active = state.active | newly
    counts = state.counts + state.graph.adjacency_matrix().dot(newly.astype(np.int64))
    return replace(state, active=active, counts=counts, round_index=state.round_index + 1)


def settle(state: ContagionState, k: int) -> ContagionState:
    """Iterate synchronous rounds until the cascade reaches its fixed point."""
    k = check_threshold(k)
    active = state.active.copy()
    counts = state.counts.copy()
    rounds = state.round_index
    graph = state.graph
    frontier = np.flatnonzero(~active & (counts >= k))
    while frontier.size:
        rounds += 1
        active[frontier] = True
        touched = np.concatenate([graph.neighbors(int(u)) for u in frontier])
        counts += np.bincount(touched, minlength=graph.node_count)
        cand = np.unique(touched)
        frontier = cand[~active[cand] & (counts[cand] >= k)]
    return replace(state, active=active, counts=counts, round_index=rounds)


def one_round_influence(graph: Graph, seeds: Iterable[int], k: int) -> int:
    """|S| plus the number of non-seeds with at least k neighbors in S."""
    k = check_threshold(k)
    state = state_from_seeds(graph, seeds)
    influenced = ~state.active & (state.counts >= k)
    return state.active_count + int(np.count_nonzero(influenced))


def full_influence(graph: Graph, seeds: Iterable[int], k: int) -> int:
    """Number of active nodes at the cascade's fixed point (reached in <= n rounds)."""
    return settle(state_from_seeds(graph, seeds), k).active_count


def marginal_one_round(state: ContagionState, u: int, k: int) -> int:
    """One-round marginal contribution of ``u`` to the state's seed set, in O(deg(u)).

    ``state`` must be a freshly seeded state (counters describing the seed set
    S itself) with ``u`` not in S; returns
    ``one_round_influence(S + {u}) - one_round_influence(S)``.
    """
    k = check_threshold(k)
    if state.active[u]:
        raise ValueError(f"node {u} is already in the seed set")
    gain = 0 if state.counts[u] >= k else 1
    nbrs = state.graph.neighbors(u)
    outside = nbrs[~state.active[nbrs]]
    gain += int(np.count_nonzero(state.counts[outside] == k - 1))
    return gain


def marginal_full(state: ContagionState, u: int, k: int) -> int:
    """Full-influence marginal of ``u``: resume the cascade from a fixed point.

    ``state`` must be the fixed point for its seed set S with u not in S; the
    cascade is resumed with ``u`` injected (copy-on-write, ``state`` is not
    mutated) and the number of newly activated nodes is returned. Nodes
    already influenced by S (active but not seeds) yield 0.
    """
    k = check_threshold(k)
    if u in state.seed_ids:
        raise ValueError(f"node {u} is already in the seed set")
    if state.active[u]:
        return 0
    graph = state.graph
    active = state.active.copy()
    counts = state.counts.copy()
    active[u] = True
    nbrs = graph.neighbors(u)
    counts[nbrs] += 1
    gained = 1
    frontier = nbrs[~active[nbrs] & (counts[nbrs] >= k)]
    while frontier.size:
        active[frontier] = True
        gained += int(frontier.size)
        touched = np.concatenate([graph.neighbors(int(v)) for v in frontier])
        counts += np.bincount(touched, minlength=graph.node_count)
        cand = np.unique(touched)
        frontier = cand[~active[cand] & (counts[cand] >= k)]
    return gained
