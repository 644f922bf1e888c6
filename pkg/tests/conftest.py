import random

import pytest

from pagtc.graphs import Graph

# Fig-1-style non-submodularity witness: leaves w, v, u attached to hub z.
W, V, U, Z = 0, 1, 2, 3


@pytest.fixture
def star():
    return Graph(4, [(W, Z), (V, Z), (U, Z)], labels=["w", "v", "u", "z"])


@pytest.fixture
def path5():
    return Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)], labels=list("abcde"))


@pytest.fixture
def triangle():
    return Graph(3, [(0, 1), (1, 2), (0, 2)])


def random_connected_graph(rng: random.Random, n: int, extra: float = 0.3) -> Graph:
    """Random spanning tree plus each remaining pair with probability ``extra``."""
    order = list(range(n))
    rng.shuffle(order)
    edges = [(order[i], order[rng.randrange(i)]) for i in range(1, n)]
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra:
                edges.append((u, v))
    return Graph(n, edges)
