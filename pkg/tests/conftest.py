import itertools
import random

import pytest
from hypothesis import strategies as st

from relgraph.graph import Graph


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    if p is None:
        p = rng.random()
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


# Brute-force reference answers, independent of the library's oracles.

def brute_hamiltonian(g: Graph) -> bool:
    n = g.n
    if n < 3:
        return False
    for rest in itertools.permutations(range(1, n)):
        order = (0,) + rest
        if all(g.has_edge(order[i], order[(i + 1) % n]) for i in range(n)):
            return True
    return False


def brute_alpha(g: Graph) -> int:
    for size in range(g.n, 0, -1):
        for s in itertools.combinations(range(g.n), size):
            if not g.induced_edges(s):
                return size
    return 0


def brute_gamma(g: Graph) -> int:
    for size in range(g.n + 1):
        for s in itertools.combinations(range(g.n), size):
            cov = set(s)
            for v in s:
                cov |= g.adj[v]
            if len(cov) == g.n:
                return size
    return g.n


def brute_chi(g: Graph) -> int:
    n = g.n
    if n == 0:
        return 0
    for k in range(1, n + 1):
        for colors in itertools.product(range(k), repeat=n - 1):
            col = (0,) + colors
            if all(col[u] != col[v] for u, v in g.edges()):
                return k
    return n


@pytest.fixture
def rng():
    return random.Random(20261015)
