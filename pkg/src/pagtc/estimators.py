"""Scikit-learn style estimators wrapping the scoring and selection routines.

Estimators accept a :class:`~pagtc.graphs.Graph`, a square adjacency matrix
(dense or sparse), an (m, 2) edge array, or a networkx-like graph; see
:func:`pagtc._validation.as_graph`. Hyper-parameters follow the sklearn
convention (stored verbatim in ``__init__``, so ``get_params`` / ``clone``
work), and fitted attributes carry a trailing underscore.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import as_graph, check_node_ids
from .scoring import (
    SizeDistribution,
    gtc_closed_form,
    monte_carlo_pagtc,
    semivalue_dirac_pagtc,
    semivalue_general_pagtc,
    shapley_pagtc,
)
from .seeding import degree_select, greedy_select, optimal_bruteforce, pagtc_delta_select
from .targeting import TargetingStrategy, run_targeted

__all__ = ["PagtcCentrality", "SeedSelector", "DynamicTargeter"]


def _as_distribution(beta) -> SizeDistribution:
    if isinstance(beta, SizeDistribution):
        return beta
    return SizeDistribution.parse(str(beta))


class PagtcCentrality(BaseEstimator):
    """Past-aware game-theoretic centrality scorer.

    Parameters
    ----------
    k : int
        Contagion threshold.
    beta : str or SizeDistribution
        Coalition-size weighting (``"shapley"``, ``"dirac:S"``,
        ``"uniform:LO,HI"``, ``"trunc:C"`` or a SizeDistribution).
    s0 : sequence of int
        Conditioning set of guaranteed collaborators; scores are defined for
        nodes outside it.
    method : str
        ``"auto"`` picks the cheapest closed form for ``beta``; ``"general"``
        forces the generic per-size formula; ``"monte-carlo"`` estimates by
        sampling (see ``samples``, ``random_state``).
    """

    def __init__(self, k=1, beta="shapley", s0=(), method="auto", samples=10000,
                 random_state=None, threads=1):
        self.k = k
        self.beta = beta
        self.s0 = s0
        self.method = method
        self.samples = samples
        self.random_state = random_state
        self.threads = threads

    def _score(self, graph):
        dist = _as_distribution(self.beta)
        s0 = check_node_ids(graph, self.s0, name="s0")
        if self.method == "monte-carlo":
            return monte_carlo_pagtc(graph, s0, self.k, dist, self.samples,
                                     rng_seed=self.random_state, threads=self.threads)
        if self.method == "general":
            return semivalue_general_pagtc(graph, s0, self.k, dist)
        if self.method != "auto":
            raise ValueError(f"unknown method {self.method!r}")
        dist = dist.resolve(graph.node_count, len(s0))
        if dist.kind == "shapley":
            if len(s0) == 0:
                return gtc_closed_form(graph, self.k)
            return shapley_pagtc(graph, s0, self.k)
        if dist.kind == "dirac":
            return semivalue_dirac_pagtc(graph, s0, self.k, dist.s)
        return semivalue_general_pagtc(graph, s0, self.k, dist)

    def fit(self, X, y=None):
        """Compute scores for the graph ``X`` and store them as ``scores_``."""
        graph = as_graph(X)
        self.scores_ = self._score(graph)
        self.graph_ = graph
        return self

    def transform(self, X):
        """Score the graph ``X``; returns an (n, 1) float column (NaN on s0)."""
        check_is_fitted(self, "scores_")
        return self._score(as_graph(X)).values.reshape(-1, 1)

    def fit_transform(self, X, y=None):
        return self.fit(X).scores_.values.reshape(-1, 1)


class SeedSelector(BaseEstimator):
    """Budget-constrained seed-set selection for influence maximization.

    ``algorithm`` is one of ``"greedy"``, ``"pagtc-delta"``, ``"degree"``,
    ``"optimal"``; ``objective`` is ``"one_round"`` or ``"full"`` (ignored by
    the algorithms whose choices do not depend on it).
    """

    def __init__(self, k=1, budget=1, algorithm="pagtc-delta", objective="one_round",
                 guard=10**7):
        self.k = k
        self.budget = budget
        self.algorithm = algorithm
        self.objective = objective
        self.guard = guard

    def fit(self, X, y=None):
        graph = as_graph(X)
        if self.algorithm == "greedy":
            sol = greedy_select(graph, self.k, self.budget, self.objective)
        elif self.algorithm == "pagtc-delta":
            sol = pagtc_delta_select(graph, self.k, self.budget)
        elif self.algorithm == "degree":
            sol = degree_select(graph, self.k, self.budget)
        elif self.algorithm == "optimal":
            sol = optimal_bruteforce(graph, self.k, self.budget, self.objective, guard=self.guard)
        else:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        self.solution_ = sol
        self.seeds_ = np.array(sol.seeds, dtype=np.int64)
        self.one_round_value_ = sol.one_round_value
        self.full_value_ = sol.full_value
        self.graph_ = graph
        return self

    def predict(self, X=None):
        """Boolean seed-membership indicator over the fitted graph's nodes."""
        check_is_fitted(self, "seeds_")
        mask = np.zeros(self.graph_.node_count, dtype=bool)
        mask[self.seeds_] = True
        return mask


class DynamicTargeter(BaseEstimator):
    """Round-by-round external activation until the whole graph is active.

    ``strategy`` is ``"degree"``, ``"greedy"``, ``"greedy-full"``,
    ``"pagtc-shapley"`` or ``"pagtc-trunc:C"``.
    """

    def __init__(self, k=1, strategy="pagtc-shapley"):
        self.k = k
        self.strategy = strategy

    def fit(self, X, y=None):
        graph = as_graph(X)
        strat = self.strategy if isinstance(self.strategy, TargetingStrategy) \
            else TargetingStrategy.parse(str(self.strategy))
        self.trace_ = run_targeted(graph, self.k, strat)
        self.rounds_ = self.trace_.rounds
        self.chosen_ = np.array(self.trace_.chosen, dtype=np.int64)
        self.history_ = np.array(self.trace_.active_history, dtype=np.int64)
        self.graph_ = graph
        return self
