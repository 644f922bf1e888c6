"""Past-aware game-theoretic centrality for the one-round influence function.

Scores the expected marginal contribution of every node to a random
coalition, conditioned on a fixed set of guaranteed collaborators ``s0``.
Closed forms cover the Shapley weighting, a fixed-coalition-size (Dirac)
weighting, and arbitrary coalition-size distributions; a subset-enumeration
oracle and a Monte-Carlo estimator provide independent cross-checks. All
closed forms run in O(|E|)-style time with two numeric backends: log-domain
floats for production scoring and exact rationals for desk-scale oracles.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple

import numpy as np
from scipy.special import logsumexp

from ._validation import check_node_ids, check_threshold, node_mask
from .binomials import binom_exact, log_binom
from .contagion import marginal_one_round, state_from_seeds
from .graphs import Graph

__all__ = [
    "SizeDistribution",
    "ScoreVector",
    "NodeLocalStats",
    "local_stats",
    "c_beta",
    "c_beta_exact",
    "shapley_pagtc",
    "shapley_pagtc_exact",
    "semivalue_dirac_pagtc",
    "semivalue_dirac_pagtc_exact",
    "semivalue_general_pagtc",
    "gtc_closed_form",
    "brute_force_marginal_sums",
    "combine_marginal_sums",
    "brute_force_pagtc",
    "monte_carlo_pagtc",
]


# -- coalition-size distributions -------------------------------------------


@dataclass(frozen=True)
class SizeDistribution:
    """Probability distribution over coalition sizes 0..n-1.

    Construct via the classmethods: :meth:`shapley` (uniform over all sizes),
    :meth:`dirac` (all mass on one size), :meth:`truncated_uniform` (uniform
    on a closed integer interval), :meth:`explicit` (arbitrary weights), or
    :meth:`truncated_fraction` (a family that resolves to an interval
    ``[s0_size, s0_size + round(c * (n - 1 - s0_size))]`` once the graph size
    and conditioning set are known).
    """

    kind: str
    s: int | None = None
    lo: int | None = None
    hi: int | None = None
    probs: tuple[float, ...] | None = None
    c: float | None = None

    @classmethod
    def shapley(cls) -> "SizeDistribution":
        return cls(kind="shapley")

    @classmethod
    def dirac(cls, s: int) -> "SizeDistribution":
        if s < 0:
            raise ValueError(f"dirac size must be >= 0, got {s}")
        return cls(kind="dirac", s=int(s))

    @classmethod
    def truncated_uniform(cls, lo: int, hi: int) -> "SizeDistribution":
        if lo < 0 or hi < lo:
            raise ValueError(f"need 0 <= lo <= hi, got lo={lo}, hi={hi}")
        return cls(kind="truncated_uniform", lo=int(lo), hi=int(hi))

    @classmethod
    def explicit(cls, weights: Iterable[float]) -> "SizeDistribution":
        w = tuple(float(x) for x in weights)
        if any(x < 0 for x in w):
            raise ValueError("explicit weights must be non-negative")
        if abs(sum(w) - 1.0) > 1e-12:
            raise ValueError(f"explicit weights must sum to 1, got {sum(w)!r}")
        return cls(kind="explicit", probs=w)

    @classmethod
    def truncated_fraction(cls, c: float) -> "SizeDistribution":
        if not 0 < c <= 1:
            raise ValueError(f"interval fraction must lie in (0, 1], got {c}")
        return cls(kind="truncated_fraction", c=float(c))

    def resolve(self, n: int, s0_size: int) -> "SizeDistribution":
        """Materialize size-dependent families for a graph of ``n`` nodes."""
        if self.kind == "truncated_fraction":
            hi = s0_size + int(self.c * (n - 1 - s0_size) + 0.5)
            return SizeDistribution.truncated_uniform(s0_size, min(hi, n - 1))
        return self

    def weights(self, n: int) -> np.ndarray:
        """Weight vector over sizes 0..n-1 (non-negative, sums to 1)."""
        if self.kind == "shapley":
            return np.full(n, 1.0 / n)
        if self.kind == "dirac":
            if self.s > n - 1:
                raise ValueError(f"dirac size {self.s} outside 0..{n - 1}")
            w = np.zeros(n)
            w[self.s] = 1.0
            return w
        if self.kind == "truncated_uniform":
            if self.hi > n - 1:
                raise ValueError(f"interval [{self.lo},{self.hi}] outside 0..{n - 1}")
            w = np.zeros(n)
            w[self.lo:self.hi + 1] = 1.0 / (self.hi - self.lo + 1)
            return w
        if self.kind == "explicit":
            if len(self.probs) != n:
                raise ValueError(f"explicit weights have length {len(self.probs)}, need {n}")
            return np.array(self.probs)
        raise ValueError(f"distribution {self.label()} must be resolved against a graph first")

    def exact_weights(self, n: int) -> list[Fraction]:
        """Weights as exact rationals (floats converted exactly)."""
        if self.kind == "shapley":
            return [Fraction(1, n)] * n
        if self.kind == "dirac":
            self.weights(n)
            return [Fraction(int(i == self.s)) for i in range(n)]
        if self.kind == "truncated_uniform":
            self.weights(n)
            m = self.hi - self.lo + 1
            return [Fraction(1, m) if self.lo <= i <= self.hi else Fraction(0) for i in range(n)]
        if self.kind == "explicit":
            self.weights(n)
            return [Fraction(x) for x in self.probs]
        raise ValueError(f"distribution {self.label()} must be resolved against a graph first")

    def label(self) -> str:
        if self.kind == "shapley":
            return "shapley"
        if self.kind == "dirac":
            return f"dirac:{self.s}"
        if self.kind == "truncated_uniform":
            return f"uniform:{self.lo},{self.hi}"
        if self.kind == "truncated_fraction":
            return f"trunc:{self.c:g}"
        return f"explicit[{len(self.probs)}]"

    @classmethod
    def parse(cls, text: str) -> "SizeDistribution":
        """Parse ``shapley | dirac:S | uniform:LO,HI | trunc:C`` flag syntax."""
        name, _, arg = text.partition(":")
        try:
            if name == "shapley" and not arg:
                return cls.shapley()
            if name == "dirac":
                return cls.dirac(int(arg))
            if name == "uniform":
                lo, hi = arg.split(",")
                return cls.truncated_uniform(int(lo), int(hi))
            if name == "trunc":
                return cls.truncated_fraction(float(arg))
        except ValueError as exc:
            raise ValueError(f"bad size-distribution spec {text!r}: {exc}") from None
        raise ValueError(
            f"bad size-distribution spec {text!r}; expected shapley | dirac:S | uniform:LO,HI | trunc:C"
        )


# -- score container ----------------------------------------------------------


@dataclass(frozen=True)
class ScoreVector:
    """Per-node centrality scores for a fixed (k, s0, size-distribution) context.

    Entries for conditioning nodes (``u in s0``) are excluded and stored as
    NaN; every defined entry is finite and non-negative.
    """

    values: np.ndarray
    excluded: np.ndarray
    context: tuple

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, u: int) -> float:
        if self.excluded[u]:
            raise KeyError(f"node {u} is in the conditioning set; its score is undefined")
        return float(self.values[u])

    def defined_nodes(self) -> np.ndarray:
        return np.flatnonzero(~self.excluded)

    def items(self):
        for u in self.defined_nodes():
            yield int(u), float(self.values[u])

    def argmax(self) -> int:
        """Highest-scoring defined node; ties broken by smallest id."""
        masked = np.where(self.excluded, -np.inf, self.values)
        return int(np.argmax(masked))

    def ranking(self) -> np.ndarray:
        """Defined node ids sorted by descending score, then ascending id."""
        ids = self.defined_nodes()
        order = np.lexsort((ids, -self.values[ids]))
        return ids[order]

    def total(self) -> float:
        return float(np.nansum(np.where(self.excluded, np.nan, self.values)))


def _make_scores(values: np.ndarray, s0_mask: np.ndarray, context: tuple) -> ScoreVector:
    values = np.asarray(values, dtype=float)
    values[s0_mask] = np.nan
    return ScoreVector(values=values, excluded=s0_mask.copy(), context=context)


# -- per-node coalition statistics -------------------------------------------


class NodeLocalStats(NamedTuple):
    """Per-node counts relative to the conditioning set s0.

    ``outside[v]`` is the number of neighbors of v outside s0; ``slack[v]``
    is k - 1 minus the number of neighbors inside s0 (how many further active
    neighbors v tolerates before the threshold; may be negative).
    """

    outside: np.ndarray
    slack: np.ndarray
    degrees: np.ndarray


def local_stats(graph: Graph, s0_mask: np.ndarray, k: int) -> NodeLocalStats:
    deg = graph.degrees.astype(np.int64)
    inside = graph.adjacency_matrix().dot(s0_mask.astype(np.int64))
    return NodeLocalStats(outside=deg - inside, slack=(k - 1) - inside, degrees=deg)


def _prep(graph: Graph, s0, k: int, require_proper: bool = True):
    k = check_threshold(k)
    s0_ids = check_node_ids(graph, s0, name="s0")
    n = graph.node_count
    if require_proper and len(s0_ids) >= n:
        raise ValueError("s0 must be a proper subset of the nodes")
    return k, s0_ids, node_mask(n, s0_ids)


# -- normalization constant ----------------------------------------------------


def c_beta(n: int, s0_size: int, dist: SizeDistribution) -> float:
    """Inverse probability that a random coalition contains the conditioning set.

    Equals ``1 / sum_{s >= s0_size} beta(s) * C(n-1-s0_size, s-s0_size) / C(n-1, s)``.
    """
    _check_c_beta_args(n, s0_size)
    w = dist.resolve(n, s0_size).weights(n)
    sizes = np.arange(s0_size, n)
    ws = w[sizes]
    keep = ws > 0
    if not keep.any():
        raise ValueError("size distribution has no mass on sizes >= |s0|")
    sizes = sizes[keep]
    terms = (
        np.log(ws[keep])
        + log_binom(n - 1 - s0_size, sizes - s0_size)
        - log_binom(n - 1, sizes)
    )
    return float(np.exp(-logsumexp(terms)))


@lru_cache(maxsize=None)
def _exact_weights_cached(dist: SizeDistribution, n: int) -> tuple[tuple, tuple]:
    """(weights, support indices) for a concrete distribution, as exact rationals."""
    ws = tuple(dist.exact_weights(n))
    support = tuple(s for s in range(n) if ws[s] > 0)
    return ws, support


def c_beta_exact(n: int, s0_size: int, dist: SizeDistribution) -> Fraction:
    """Exact-rational counterpart of :func:`c_beta`.

    Uses the identity C(n-1-k0, s-k0) / C(n-1, s) = P(s, k0) / P(n-1, k0)
    with falling factorials P, so the sum stays in integer arithmetic for the
    uniform-flavored distributions.
    """
    _check_c_beta_args(n, s0_size)
    return _c_beta_exact_cached(dist.resolve(n, s0_size), n, s0_size)


@lru_cache(maxsize=None)
def _c_beta_exact_cached(dist: SizeDistribution, n: int, k0: int) -> Fraction:
    falling = [0] * n  # falling[s] = s * (s-1) * ... * (s-k0+1)
    p = math.factorial(k0)
    for s in range(k0, n):
        falling[s] = p
        p = p * (s + 1) // (s + 1 - k0)
    ws, support = _exact_weights_cached(dist, n)
    live = [s for s in support if s >= k0]
    if not live:
        raise ValueError("size distribution has no mass on sizes >= |s0|")
    if dist.kind in ("shapley", "dirac", "truncated_uniform"):
        total = ws[live[0]] * sum(falling[s] for s in live)
    else:
        total = sum((ws[s] * falling[s] for s in live), start=Fraction(0))
    denom = falling[n - 1] if n - 1 >= k0 else math.factorial(k0)
    return Fraction(denom) / total


def _check_c_beta_args(n: int, s0_size: int) -> None:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 0 <= s0_size <= n - 1:
        raise ValueError(f"need 0 <= |s0| <= n-1, got |s0|={s0_size}, n={n}")


# -- Shapley closed form -------------------------------------------------------


def shapley_pagtc(graph: Graph, s0, k: int) -> ScoreVector:
    """Shapley-weighted past-aware centrality of every node outside ``s0``.

    For each node the score combines an own-activation term with one term per
    neighbor that could be tipped over the threshold; O(|E|) arithmetic
    overall. Terms whose counting coefficient vanishes contribute exactly 0
    without touching their denominators.
    """
    k, s0_ids, s0_mask = _prep(graph, s0, k)
    n, k0 = graph.node_count, len(s0_ids)
    out, slk, _ = local_stats(graph, s0_mask, k)
    m = np.minimum(out, slk)

    lognum1 = log_binom(k0 + 1 + m, k0 + 1)  # -inf exactly when the node is pre-activated
    logden1 = log_binom(k0 + out, k0)
    c1 = np.exp(lognum1 - logden1) / (k0 + out + 1)

    lognum2 = log_binom(out - 1, slk)
    c2 = np.zeros(n)
    open_v = np.isfinite(lognum2)
    open_v &= ~s0_mask
    if open_v.any():
        logden2 = log_binom(k0 + out[open_v], k0 + slk[open_v])
        c2[open_v] = np.exp(lognum2[open_v] - logden2) / (k0 + out[open_v] + 1)

    scores = (k0 + 1) * (c1 + graph.adjacency_matrix().dot(c2))
    return _make_scores(scores, s0_mask, (k, tuple(s0_ids.tolist()), "shapley"))


def shapley_pagtc_exact(graph: Graph, s0, k: int) -> dict[int, Fraction]:
    """Exact-rational Shapley scores, keyed by node id (nodes outside s0)."""
    k, s0_ids, s0_mask = _prep(graph, s0, k)
    n, k0 = graph.node_count, len(s0_ids)
    out, slk, _ = local_stats(graph, s0_mask, k)

    c2 = [Fraction(0)] * n
    for v in range(n):
        if s0_mask[v]:
            continue
        num = binom_exact(int(out[v]) - 1, int(slk[v]))
        if num:
            den = binom_exact(k0 + int(out[v]), k0 + int(slk[v])) * (k0 + int(out[v]) + 1)
            c2[v] = Fraction(num, den)

    scores: dict[int, Fraction] = {}
    for u in range(n):
        if s0_mask[u]:
            continue
        mu = min(int(out[u]), int(slk[u]))
        num = binom_exact(k0 + 1 + mu, k0 + 1)
        c1 = Fraction(0)
        if num:
            c1 = Fraction(num, binom_exact(k0 + int(out[u]), k0) * (k0 + int(out[u]) + 1))
        acc = c1
        for v in graph.neighbors(u):
            acc += c2[int(v)]
        scores[u] = (k0 + 1) * acc
    return scores


# -- Dirac (fixed coalition size) closed form ----------------------------------


def _dirac_score_kernel(adj, n: int, k: int, k0: int, size: int, out, slk, excluded) -> np.ndarray:
    """Raw fixed-size scores from per-node stats; ``excluded`` rows are skipped."""
    logden = log_binom(n - 1 - k0, out)
    logden = np.where(excluded, 0.0, logden)  # excluded rows are discarded; keep arithmetic clean
    m = np.minimum(out, slk)

    js = np.arange(k)
    lognum = log_binom(n - 1 - size, out[None, :] - js[:, None]) + log_binom(size - k0, js)[:, None]
    terms = np.exp(lognum - logden[None, :])
    terms[js[:, None] > m[None, :]] = 0.0
    uterm = terms.sum(axis=0)
    uterm[excluded] = 0.0

    logt = log_binom(n - 1 - size, out - slk) + log_binom(size - k0, slk) - logden
    tv = np.exp(logt) * (out - slk) / np.maximum(out, 1)
    tv[excluded | (out == 0)] = 0.0
    return uterm + adj.dot(tv)


def semivalue_dirac_pagtc(graph: Graph, s0, k: int, s: int) -> ScoreVector:
    """Past-aware centrality when all coalition-size mass sits at size ``s``.

    Equals the expected one-round marginal contribution over a uniformly
    random size-``s`` coalition containing ``s0``; O(k |E|) arithmetic. At
    ``s == |s0|`` it reduces exactly to the one-round marginal contribution.
    """
    k, s0_ids, s0_mask = _prep(graph, s0, k)
    n, k0 = graph.node_count, len(s0_ids)
    if not k0 <= s <= n - 1:
        raise ValueError(f"coalition size must lie in [{k0}, {n - 1}], got {s}")
    out, slk, _ = local_stats(graph, s0_mask, k)
    scores = _dirac_score_kernel(graph.adjacency_matrix(), n, k, k0, s, out, slk, s0_mask)
    return _make_scores(scores, s0_mask, (k, tuple(s0_ids.tolist()), f"dirac:{s}"))


def semivalue_dirac_pagtc_exact(graph: Graph, s0, k: int, s: int) -> dict[int, Fraction]:
    """Exact-rational counterpart of :func:`semivalue_dirac_pagtc`."""
    k, s0_ids, s0_mask = _prep(graph, s0, k)
    n, k0 = graph.node_count, len(s0_ids)
    if not k0 <= s <= n - 1:
        raise ValueError(f"coalition size must lie in [{k0}, {n - 1}], got {s}")
    out, slk, _ = local_stats(graph, s0_mask, k)

    tv = [Fraction(0)] * n
    for v in range(n):
        ov, rv = int(out[v]), int(slk[v])
        if s0_mask[v] or ov == 0:
            continue
        num = binom_exact(n - 1 - s, ov - rv) * binom_exact(s - k0, rv) * (ov - rv)
        if num:
            tv[v] = Fraction(num, binom_exact(n - 1 - k0, ov) * ov)

    scores: dict[int, Fraction] = {}
    for u in range(n):
        if s0_mask[u]:
            continue
        ou, ru = int(out[u]), int(slk[u])
        num = sum(
            binom_exact(n - 1 - s, ou - j) * binom_exact(s - k0, j)
            for j in range(0, min(ou, ru) + 1)
        )
        acc = Fraction(num, binom_exact(n - 1 - k0, ou)) if num else Fraction(0)
        for v in graph.neighbors(u):
            acc += tv[int(v)]
        scores[u] = acc
    return scores


# -- general semivalue ----------------------------------------------------------


def semivalue_general_pagtc(
    graph: Graph, s0, k: int, dist: SizeDistribution, normalized: bool = True
) -> ScoreVector:
    """Past-aware centrality under an arbitrary coalition-size distribution.

    Sums the per-size coalition counts over the distribution's support;
    agrees with :func:`shapley_pagtc` for the uniform distribution and with
    :func:`semivalue_dirac_pagtc` for a point mass. ``normalized=False``
    skips the conditioning constant (a uniform scaling that never changes
    the node ranking).
    """
    k, s0_ids, s0_mask = _prep(graph, s0, k)
    n, k0 = graph.node_count, len(s0_ids)
    dist = dist.resolve(n, k0)
    scale = c_beta(n, k0, dist) if normalized else 1.0
    w = dist.weights(n)
    out, slk, _ = local_stats(graph, s0_mask, k)
    m = np.minimum(out, slk)
    pool = n - 1 - k0 - out  # non-neighbors of v available outside s0

    uacc = np.zeros(n)
    vacc = np.zeros(n)
    open_v = ~s0_mask
    lognum_v = log_binom(out - 1, slk)
    for size in range(k0, n):
        if w[size] <= 0:
            continue
        base = math.log(w[size]) - log_binom(n - 1, size)
        for j in range(k):
            live = (j <= m) & ~s0_mask
            if not live.any():
                break
            uacc[live] += np.exp(
                base + log_binom(out[live], j) + log_binom(pool[live], size - k0 - j)
            )
        vacc[open_v] += np.exp(
            base + lognum_v[open_v] + log_binom(pool[open_v], size - k0 - slk[open_v])
        )

    scores = scale * (uacc + graph.adjacency_matrix().dot(vacc))
    return _make_scores(scores, s0_mask, (k, tuple(s0_ids.tolist()), dist.label()))


# -- no-conditioning closed form -------------------------------------------------


def gtc_closed_form(graph: Graph, k: int) -> ScoreVector:
    """Shapley centrality for the one-round influence with no conditioning set.

    ``min(1, k / (deg(u) + 1)) + sum over neighbors v of
    max(deg(v) + 1 - k, 0) / (deg(v) * (deg(v) + 1))``.
    """
    k = check_threshold(k)
    deg = graph.degrees.astype(float)
    own = np.minimum(1.0, k / (deg + 1.0))
    q = np.zeros(graph.node_count)
    pos = deg > 0
    q[pos] = np.maximum(deg[pos] + 1.0 - k, 0.0) / (deg[pos] * (deg[pos] + 1.0))
    scores = own + graph.adjacency_matrix().dot(q)
    return _make_scores(scores, np.zeros(graph.node_count, dtype=bool), (k, (), "gtc"))


# -- enumeration oracle -----------------------------------------------------------


def brute_force_marginal_sums(graph: Graph, s0, k: int, u: int, guard: int = 22) -> list[int]:
    """Sum of one-round marginals of ``u`` over every coalition, bucketed by size.

    Enumerates all S with ``s0 <= S <= V - {u}`` and returns integer sums
    indexed by |S|; the backbone of the enumeration oracle. Memory and time
    grow as 2^(n - 1 - |s0|), hence the node-count ``guard``.
    """
    k, s0_ids, s0_mask = _prep(graph, s0, k)
    n, k0 = graph.node_count, len(s0_ids)
    if n > guard:
        raise ValueError(f"brute force guard: n={n} exceeds guard={guard}")
    if s0_mask[u]:
        raise ValueError(f"node {u} is in the conditioning set")
    masks = graph.neighbor_bitmasks()
    s0_int = 0
    for v in s0_ids:
        s0_int |= 1 << int(v)
    pool = [v for v in range(n) if not s0_mask[v] and v != u]

    subset_masks = [s0_int]
    subset_sizes = [k0]
    for v in pool:
        bit = 1 << v
        subset_masks += [mask | bit for mask in subset_masks]
        subset_sizes += [size + 1 for size in subset_sizes]

    adj_u = masks[u]
    nbrs_u = [int(v) for v in graph.neighbors(u)]
    sums = [0] * n
    for mask, size in zip(subset_masks, subset_sizes):
        marg = 1 if (adj_u & mask).bit_count() < k else 0
        for v in nbrs_u:
            if not (mask >> v) & 1 and (masks[v] & mask).bit_count() == k - 1:
                marg += 1
        sums[size] += marg
    return sums


def combine_marginal_sums(n: int, s0_size: int, dist: SizeDistribution, sums: list[int]) -> Fraction:
    """Fold size-bucketed marginal sums into the exact conditioned expectation."""
    dist = dist.resolve(n, s0_size)
    ws, support = _exact_weights_cached(dist, n)
    total = Fraction(0)
    for s in support:
        if s >= s0_size and sums[s]:
            total += ws[s] * Fraction(sums[s], binom_exact(n - 1, s))
    return c_beta_exact(n, s0_size, dist) * total


def brute_force_pagtc(
    graph: Graph, s0, k: int, dist: SizeDistribution, u: int, guard: int = 22
) -> Fraction:
    """Exact score of ``u`` by direct enumeration of the defining double sum.

    The oracle against which every closed form is tested; exact rational
    arithmetic throughout.
    """
    s0_ids = check_node_ids(graph, s0, name="s0")
    sums = brute_force_marginal_sums(graph, s0_ids, k, u, guard=guard)
    return combine_marginal_sums(graph.node_count, len(s0_ids), dist, sums)


# -- Monte-Carlo estimator ---------------------------------------------------------


def monte_carlo_pagtc(
    graph: Graph,
    s0,
    k: int,
    dist: SizeDistribution,
    samples: int,
    rng_seed: int | None = None,
    threads: int = 1,
    with_stderr: bool = False,
    _chunk: int = 20000,
):
    """Unbiased sampling estimate of the past-aware centrality of every node.

    For each node, coalitions are drawn from the conditional law (size with
    probability proportional to ``beta(s) * C(n-1-|s0|, s-|s0|) / C(n-1, s)``,
    then a uniform subset of the remaining nodes united with ``s0``) and the
    one-round marginal is averaged. Per-node RNG streams are spawned from
    ``rng_seed``, so results do not depend on the thread count. With
    ``with_stderr=True`` returns ``(scores, stderr)`` where ``stderr`` holds
    the per-node standard error of the mean.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    k, s0_ids, s0_mask = _prep(graph, s0, k)
    n, k0 = graph.node_count, len(s0_ids)
    dist = dist.resolve(n, k0)
    w = dist.weights(n)
    sizes_all = np.arange(k0, n)
    keep = w[sizes_all] > 0
    if not keep.any():
        raise ValueError("size distribution has no mass on sizes >= |s0|")
    sizes_all = sizes_all[keep]
    logp = (
        np.log(w[sizes_all])
        + log_binom(n - 1 - k0, sizes_all - k0)
        - log_binom(n - 1, sizes_all)
    )
    probs = np.exp(logp - logsumexp(logp))
    probs /= probs.sum()

    children = np.random.SeedSequence(rng_seed).spawn(n)
    adj_rows = [graph.neighbors(v) for v in range(n)]

    def score_one(u: int) -> tuple[float, float]:
        rng = np.random.default_rng(children[u])
        drawn = rng.choice(sizes_all, size=samples, p=probs)
        pool = np.flatnonzero(~s0_mask)
        pool = pool[pool != u]
        nbrs_u = adj_rows[u]
        base_state = None
        total = total_sq = 0.0
        for size in np.unique(drawn):
            count = int(np.count_nonzero(drawn == size))
            t = int(size) - k0
            if t == 0:
                if base_state is None:
                    base_state = state_from_seeds(graph, s0_ids)
                val = marginal_one_round(base_state, u, k)
                total += count * val
                total_sq += count * val * val
                continue
            done = 0
            while done < count:
                m = min(_chunk, count - done)
                keys = rng.random((m, pool.size))
                sel = np.argpartition(keys, t - 1, axis=1)[:, :t]
                member = np.zeros((m, n), dtype=bool)
                member[np.arange(m)[:, None], pool[sel]] = True
                if k0:
                    member[:, s0_ids] = True
                marg = (member[:, nbrs_u].sum(axis=1) < k).astype(np.int64)
                for v in nbrs_u:
                    cnt_v = member[:, adj_rows[v]].sum(axis=1)
                    marg += (~member[:, v]) & (cnt_v == k - 1)
                total += float(marg.sum())
                total_sq += float((marg * marg).sum())
                done += m
        mean = total / samples
        variance = max(total_sq / samples - mean * mean, 0.0)
        return mean, math.sqrt(variance / samples)

    targets = [u for u in range(n) if not s0_mask[u]]
    values = np.full(n, np.nan)
    errors = np.full(n, np.nan)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool_exec:
            results = list(pool_exec.map(score_one, targets))
    else:
        results = [score_one(u) for u in targets]
    for u, (mean, err) in zip(targets, results):
        values[u] = mean
        errors[u] = err
    scores = _make_scores(values, s0_mask, (k, tuple(s0_ids.tolist()), f"mc:{dist.label()}"))
    if with_stderr:
        return scores, errors
    return scores
