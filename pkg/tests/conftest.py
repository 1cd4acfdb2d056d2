from __future__ import annotations

import random

import pytest

from copwin.graph import Graph


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the numba kernels once so timed tests measure the algorithms."""
    from copwin import cops_can_win, is_dismantlable
    from copwin.generate import GenSpec, generate

    k2 = Graph.from_edges(2, [(0, 1)])
    cops_can_win(k2, 1)
    is_dismantlable(k2)
    generate(GenSpec(3))


def random_graph(rng: random.Random, n: int, p: float = 0.4) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_connected_graph(rng: random.Random, n: int, p: float = 0.4) -> Graph:
    from copwin.graph import is_connected

    while True:
        g = random_graph(rng, n, p)
        if is_connected(g):
            return g
