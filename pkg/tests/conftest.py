"""Independent brute-force oracles shared by the test modules."""

from __future__ import annotations

from itertools import combinations, product

import networkx as nx
import pytest

from chiconn.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges(len(index), [(index[a], index[b]) for a, b in h.edges()])


def brute_is_connected_after(g: Graph, removed: set[int]) -> bool:
    h = to_nx(g)
    h.remove_nodes_from(removed)
    return h.number_of_nodes() == 0 or nx.is_connected(h)


def brute_k_connected(g: Graph, kappa: int) -> bool:
    if g.n <= kappa:
        return False
    for size in range(kappa):
        for x in combinations(range(g.n), size):
            if not brute_is_connected_after(g, set(x)):
                return False
    return True


def brute_colorable(g: Graph, ncolors: int, domains=None) -> bool:
    edges = list(g.edges())
    if domains is None:
        domains = [range(1, ncolors + 1)] * g.n
    for f in product(*domains):
        if all(f[u] != f[v] for u, v in edges):
            return True
    return False


def brute_chromatic(g: Graph) -> int:
    m = 0
    while not brute_colorable(g, m):
        m += 1
    return m


def brute_respecting(g: Graph, t, ncolors: int) -> bool:
    domains = []
    for v in range(g.n):
        if v in t.colors:
            domains.append([t.colors[v]])
        else:
            domains.append([c for c in range(1, ncolors + 1) if c not in t.F(v)])
    return brute_colorable(g, ncolors, domains)


@pytest.fixture(scope="session")
def atlas() -> list[Graph]:
    """Every graph on at most 7 vertices up to isomorphism (networkx's atlas)."""
    return [from_nx(h) for h in nx.graph_atlas_g()]
