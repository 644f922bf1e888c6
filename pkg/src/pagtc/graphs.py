"""Immutable undirected graphs: loading, generation, and bundled datasets.

Graphs are stored in compressed sparse adjacency form (CSR-style index
pointers plus a flat, per-node-sorted neighbor array), with node ids densely
numbered 0..n-1 and an optional external label per node.
"""

from __future__ import annotations

import io
import warnings
from importlib import resources
from typing import Iterable, Sequence, TextIO

import numpy as np
import scipy.sparse as sp

__all__ = [
    "Graph",
    "EdgeListError",
    "load_edge_list",
    "read_edge_list",
    "write_edge_list",
    "generate_navigable_small_world",
    "load_bundled",
    "BUNDLED_DATASETS",
]

BUNDLED_DATASETS = ("flor-families", "les-miserables", "fig2-grid")


class EdgeListError(ValueError):
    """Raised when edge-list text cannot be parsed."""


class Graph:
    """Simple undirected graph, immutable after construction.

    Parameters
    ----------
    n : int
        Number of nodes; ids are 0..n-1.
    edges : iterable of (int, int)
        Undirected edges. Self-loops and duplicates are dropped.
    labels : sequence of str, optional
        External label per node id. Defaults to the decimal ids.
    """

    __slots__ = ("indptr", "indices", "labels", "_label_to_id", "_csr", "_bitmasks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None):
        if n < 1:
            raise ValueError(f"graph needs at least one node, got n={n}")
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                continue
            seen.add((u, v) if u < v else (v, u))
        deg = np.zeros(n, dtype=np.int64)
        for u, v in seen:
            deg[u] += 1
            deg[v] += 1
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        indices = np.zeros(indptr[-1], dtype=np.int64)
        fill = indptr[:-1].copy()
        for u, v in seen:
            indices[fill[u]] = v
            fill[u] += 1
            indices[fill[v]] = u
            fill[v] += 1
        for u in range(n):  # sorted adjacency enables O(deg) merges
            indices[indptr[u]:indptr[u + 1]].sort()
        indptr.setflags(write=False)
        indices.setflags(write=False)
        self.indptr = indptr
        self.indices = indices
        if labels is not None:
            if len(labels) != n:
                raise ValueError("labels must have one entry per node")
            self.labels = tuple(str(x) for x in labels)
        else:
            self.labels = tuple(str(u) for u in range(n))
        self._label_to_id = {lab: u for u, lab in enumerate(self.labels)}
        self._csr = None
        self._bitmasks = None

    # -- basic accessors -----------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return self.indptr[1:] - self.indptr[:-1]

    def degree(self, u: int) -> int:
        return int(self.indptr[u + 1] - self.indptr[u])

    def neighbors(self, u: int) -> np.ndarray:
        """Sorted neighbor ids of ``u`` (read-only view)."""
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def label(self, u: int) -> str:
        return self.labels[u]

    def id_of(self, label: str) -> int:
        try:
            return self._label_to_id[label]
        except KeyError:
            raise KeyError(f"unknown node label {label!r}") from None

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edge list with u < v, sorted."""
        out = []
        for u in range(self.node_count):
            for v in self.neighbors(u):
                if u < v:
                    out.append((u, int(v)))
        return out

    def adjacency_matrix(self) -> sp.csr_matrix:
        """Boolean CSR adjacency matrix (cached)."""
        if self._csr is None:
            n = self.node_count
            data = np.ones(len(self.indices), dtype=np.int8)
            self._csr = sp.csr_matrix((data, self.indices, self.indptr), shape=(n, n))
        return self._csr

    def neighbor_bitmasks(self) -> list[int]:
        """Per-node adjacency as Python int bitmasks (cached); for n <= ~64 node work."""
        if self._bitmasks is None:
            masks = []
            for u in range(self.node_count):
                m = 0
                for v in self.neighbors(u):
                    m |= 1 << int(v)
                masks.append(m)
            self._bitmasks = masks
        return self._bitmasks

    def is_connected(self) -> bool:
        n = self.node_count
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self.neighbors(u):
                if not seen[v]:
                    seen[v] = True
                    stack.append(int(v))
        return bool(seen.all())

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, m={self.edge_count})"


# -- edge-list parsing ---------------------------------------------------------


def read_edge_list(text: str | TextIO, directed_input: bool = False) -> Graph:
    """Parse edge-list text into a :class:`Graph`.

    Each non-comment line must start with two whitespace-separated node
    tokens; further columns (weights, timestamps, ...) are ignored. Lines
    starting with ``#`` or ``%`` are comments. Tokens are mapped to dense ids
    in order of first appearance. Duplicate edges and self-loops are dropped;
    directed input is symmetrized.

    Raises
    ------
    EdgeListError
        On a line with fewer than two tokens (reported with its line number)
        or when the input contains no node tokens at all.
    """
    if isinstance(text, str):
        text = io.StringIO(text)
    ids: dict[str, int] = {}
    edges: list[tuple[int, int]] = []

    def intern(tok: str) -> int:
        if tok not in ids:
            ids[tok] = len(ids)
        return ids[tok]

    for lineno, line in enumerate(text, start=1):
        stripped = line.strip()
        if not stripped or stripped[0] in "#%":
            continue
        parts = stripped.split()
        if len(parts) < 2:
            raise EdgeListError(f"line {lineno}: expected two node tokens, got {stripped!r}")
        u, v = intern(parts[0]), intern(parts[1])
        edges.append((u, v))
    if not ids:
        raise EdgeListError("empty edge list: no node tokens found")
    labels = [None] * len(ids)
    for tok, i in ids.items():
        labels[i] = tok
    graph = Graph(len(ids), edges, labels=labels)
    _warn_if_disconnected(graph)
    return graph


def load_edge_list(path, directed_input: bool = False) -> Graph:
    """Load an edge-list file from ``path`` (see :func:`read_edge_list`)."""
    with open(path, "r", encoding="utf-8") as fh:
        return read_edge_list(fh, directed_input=directed_input)


def write_edge_list(graph: Graph, stream: TextIO) -> None:
    """Write ``graph`` as label pairs, one edge per line."""
    for u, v in graph.edges():
        stream.write(f"{graph.label(u)} {graph.label(v)}\n")


def _warn_if_disconnected(graph: Graph) -> None:
    if graph.node_count > 1 and not graph.is_connected():
        warnings.warn("graph is disconnected", stacklevel=3)


# -- generators ------------------------------------------------------------


def generate_navigable_small_world(
    side: int,
    long_range_per_node: int = 1,
    exponent: float = 2.0,
    rng_seed: int | None = None,
) -> Graph:
    """Navigable small-world graph on a ``side`` x ``side`` lattice.

    Nodes form a 4-neighbor grid; every node additionally draws
    ``long_range_per_node`` long-range endpoints among the nodes at
    Manhattan distance >= 2 (the lattice contacts are already wired), with
    probability proportional to ``manhattan_distance ** -exponent``. The
    directed draws are symmetrized and deduplicated. Deterministic for a
    fixed ``rng_seed``.
    """
    if side < 2:
        raise ValueError(f"side must be >= 2, got {side}")
    if long_range_per_node < 0:
        raise ValueError("long_range_per_node must be >= 0")
    if exponent < 0:
        raise ValueError("exponent must be >= 0")
    n = side * side
    rng = np.random.default_rng(rng_seed)

    def nid(i: int, j: int) -> int:
        return i * side + j

    edges: list[tuple[int, int]] = []
    for i in range(side):
        for j in range(side):
            if i + 1 < side:
                edges.append((nid(i, j), nid(i + 1, j)))
            if j + 1 < side:
                edges.append((nid(i, j), nid(i, j + 1)))

    if long_range_per_node > 0:
        ii, jj = np.divmod(np.arange(n), side)
        for u in range(n):
            dist = np.abs(ii - ii[u]) + np.abs(jj - jj[u])
            weights = np.zeros(n)
            mask = dist >= 2
            weights[mask] = dist[mask].astype(float) ** -exponent
            weights /= weights.sum()
            targets = rng.choice(n, size=long_range_per_node, p=weights)
            for v in targets:
                edges.append((u, int(v)))

    graph = Graph(n, edges)
    _warn_if_disconnected(graph)
    return graph


# -- bundled datasets --------------------------------------------------------


def load_bundled(name: str) -> Graph:
    """Load one of the bundled datasets by name.

    Available names: ``flor-families`` (15 nodes, 20 edges),
    ``les-miserables`` (77 nodes, 254 edges), ``fig2-grid`` (a 25-node
    small-world instance).
    """
    if name not in BUNDLED_DATASETS:
        raise ValueError(
            f"unknown dataset {name!r}; available: {', '.join(BUNDLED_DATASETS)}"
        )
    ref = resources.files("pagtc.data").joinpath(f"{name}.edges")
    with ref.open("r", encoding="utf-8") as fh:
        return read_edge_list(fh)
