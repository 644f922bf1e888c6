"""Dynamically targeted contagion: one external activation per round.

Starting from an empty active set, each round performs one synchronous
contagion step and then, if the graph is not yet fully active, externally
activates one node chosen by a pluggable strategy. The objective is to
saturate the graph in as few rounds as possible; every strategy breaks ties
toward the smallest node id, so runs are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import check_threshold
from .contagion import marginal_full, settle, state_from_seeds, step
from .graphs import Graph
from .scoring import SizeDistribution, semivalue_general_pagtc, shapley_pagtc

__all__ = ["TargetingStrategy", "TargetingTrace", "choose_next", "run_targeted", "trace_export"]

_KINDS = ("degree", "greedy", "greedy-full", "pagtc-shapley", "pagtc-trunc")


@dataclass(frozen=True)
class TargetingStrategy:
    """External-activation policy; ``pagtc-trunc`` carries an interval fraction c."""

    kind: str
    c: float | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown strategy {self.kind!r}; expected one of {_KINDS}")
        if self.kind == "pagtc-trunc":
            if self.c is None or not 0 < self.c <= 1:
                raise ValueError("pagtc-trunc needs an interval fraction c in (0, 1]")
        elif self.c is not None:
            raise ValueError(f"strategy {self.kind!r} takes no parameter")

    @classmethod
    def parse(cls, text: str) -> "TargetingStrategy":
        """Parse ``degree | greedy | greedy-full | pagtc-shapley | pagtc-trunc:C``."""
        name, _, arg = text.partition(":")
        if name == "pagtc-trunc":
            try:
                return cls("pagtc-trunc", float(arg))
            except ValueError:
                raise ValueError(f"bad strategy spec {text!r}: need pagtc-trunc:C") from None
        if arg:
            raise ValueError(f"strategy {name!r} takes no parameter")
        return cls(name)

    def label(self) -> str:
        return f"pagtc-trunc:{self.c:g}" if self.kind == "pagtc-trunc" else self.kind


@dataclass(frozen=True)
class TargetingTrace:
    """Round count, externally activated nodes, and per-round active totals."""

    rounds: int
    chosen: tuple[int, ...]
    active_history: tuple[int, ...]

    def normalized_rounds(self, n: int) -> float:
        return 100.0 * self.rounds / n


def choose_next(graph: Graph, active, k: int, strategy: TargetingStrategy) -> int:
    """Pick the next node to activate externally given the current active set."""
    k = check_threshold(k)
    active = np.asarray(active, dtype=bool)
    n = graph.node_count
    if active.all():
        raise ValueError("all nodes are already active")
    ids = np.arange(n)

    if strategy.kind == "degree":
        order = np.lexsort((ids, -graph.degrees))
        for u in order:
            if not active[u]:
                return int(u)

    active_ids = np.flatnonzero(active)
    if strategy.kind == "greedy":
        counts = graph.adjacency_matrix().dot(active.astype(np.int64))
        helper = (~active) & (counts == k - 1)
        gain = (counts < k).astype(np.int64) + graph.adjacency_matrix().dot(helper.astype(np.int64))
        gain[active] = -1
        return int(np.argmax(gain))

    if strategy.kind == "greedy-full":
        base = settle(state_from_seeds(graph, active_ids), k)
        best_gain, best_u = -1, -1
        for u in range(n):
            if active[u]:
                continue
            gain = marginal_full(base, u, k)
            if gain > best_gain:
                best_gain, best_u = gain, u
        return best_u

    if strategy.kind == "pagtc-shapley":
        return shapley_pagtc(graph, active_ids, k).argmax()

    dist = SizeDistribution.truncated_fraction(strategy.c)
    return semivalue_general_pagtc(graph, active_ids, k, dist).argmax()


def run_targeted(graph: Graph, k: int, strategy: TargetingStrategy) -> TargetingTrace:
    """Drive the targeted contagion from an empty set until full activation.

    Each round runs one synchronous contagion step and then (unless the step
    itself completed activation) externally activates the strategy's pick;
    progress is at least one node per round, so at most n rounds occur.
    """
    k = check_threshold(k)
    n = graph.node_count
    state = state_from_seeds(graph, [])
    rounds = 0
    chosen: list[int] = []
    history: list[int] = []
    while state.active_count < n:
        rounds += 1
        state = step(state, k)
        if state.active_count < n:
            u = choose_next(graph, state.active, k, strategy)
            chosen.append(u)
            state = state_from_seeds(graph, np.flatnonzero(state.active).tolist() + [u])
        history.append(state.active_count)
    return TargetingTrace(rounds=rounds, chosen=tuple(chosen), active_history=tuple(history))


def trace_export(trace: TargetingTrace) -> list[tuple[int, int]]:
    """(round, active_count) rows, one per completed round."""
    return [(i + 1, count) for i, count in enumerate(trace.active_history)]
