"""Input validation and coercion helpers shared across the package."""

from __future__ import annotations

from typing import Iterable

import numpy as np
import scipy.sparse as sp

from .graphs import Graph

__all__ = ["as_graph", "check_threshold", "check_budget", "check_node_ids", "node_mask"]


def check_threshold(k) -> int:
    """Validate a contagion threshold (integer, >= 1)."""
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise TypeError(f"threshold k must be an integer, got {type(k).__name__}")
    if k < 1:
        raise ValueError(f"threshold k must be >= 1, got {k}")
    return int(k)


def check_budget(r, n: int) -> int:
    """Validate a seed budget r with 0 < r < n."""
    if not isinstance(r, (int, np.integer)) or isinstance(r, bool):
        raise TypeError(f"budget r must be an integer, got {type(r).__name__}")
    if not 0 < r < n:
        raise ValueError(f"budget r must satisfy 0 < r < n={n}, got {r}")
    return int(r)


def check_node_ids(graph: Graph, nodes: Iterable[int] | None, name: str = "nodes") -> np.ndarray:
    """Coerce ``nodes`` to a sorted, duplicate-free int array of valid ids."""
    if nodes is None:
        return np.empty(0, dtype=np.int64)
    arr = np.unique(np.asarray(list(nodes), dtype=np.int64))
    if arr.size and (arr[0] < 0 or arr[-1] >= graph.node_count):
        bad = arr[(arr < 0) | (arr >= graph.node_count)]
        raise ValueError(f"{name} contains ids out of range 0..{graph.node_count - 1}: {bad.tolist()}")
    return arr


def node_mask(n: int, nodes: np.ndarray) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    mask[nodes] = True
    return mask


def as_graph(X) -> Graph:
    """Coerce estimator input to a :class:`Graph`.

    Accepts a Graph, a square (sparse or dense) adjacency matrix, a
    networkx-like graph object, or an iterable of (u, v) edge pairs over
    integer ids.
    """
    if isinstance(X, Graph):
        return X
    if sp.issparse(X):
        coo = X.tocoo()
        if coo.shape[0] != coo.shape[1]:
            raise ValueError("adjacency matrix must be square")
        return Graph(coo.shape[0], zip(coo.row.tolist(), coo.col.tolist()))
    if isinstance(X, np.ndarray):
        if X.ndim == 2 and X.shape[0] == X.shape[1]:
            rows, cols = np.nonzero(X)
            return Graph(X.shape[0], zip(rows.tolist(), cols.tolist()))
        if X.ndim == 2 and X.shape[1] == 2:
            edges = [(int(u), int(v)) for u, v in X]
            n = 1 + max(max(u, v) for u, v in edges)
            return Graph(n, edges)
        raise ValueError(f"cannot interpret array of shape {X.shape} as a graph")
    if hasattr(X, "number_of_nodes") and hasattr(X, "edges"):
        labels = [str(v) for v in X.nodes()]
        index = {v: i for i, v in enumerate(X.nodes())}
        edges = [(index[u], index[v]) for u, v in X.edges()]
        return Graph(X.number_of_nodes(), edges, labels=labels)
    try:
        edges = [(int(u), int(v)) for u, v in X]
    except (TypeError, ValueError):
        raise TypeError(f"cannot interpret {type(X).__name__} as a graph") from None
    if not edges:
        raise ValueError("edge iterable is empty")
    n = 1 + max(max(u, v) for u, v in edges)
    return Graph(n, edges)
