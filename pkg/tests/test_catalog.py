from collections import Counter

import networkx as nx
import pytest

from chiconn.catalog import GRAPH_COUNTS, catalog, catalog_key, graphs_on
from chiconn.graph import is_connected
from conftest import to_nx

CONNECTED_COUNTS = (1, 1, 1, 2, 6, 21, 112, 853)


def test_counts_match_known_sequence():
    for n in range(8):
        assert len(graphs_on(n)) == GRAPH_COUNTS[n]
        assert len(graphs_on(n, connected=True)) == CONNECTED_COUNTS[n]


def test_agrees_with_networkx_atlas(atlas):
    ours = Counter(g.n for g in catalog(7))
    theirs = Counter(g.n for g in atlas)
    assert ours == theirs


@pytest.mark.parametrize("n", [5, 6])
def test_pairwise_non_isomorphic(n):
    gs = [to_nx(g) for g in graphs_on(n)]
    by_hash = Counter(nx.weisfeiler_lehman_graph_hash(h) for h in gs)
    for h_key, count in by_hash.items():
        group = [h for h in gs if nx.weisfeiler_lehman_graph_hash(h) == h_key]
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                assert not nx.is_isomorphic(group[i], group[j])


def test_every_atlas_graph_is_covered(atlas):
    ours = {}
    for g in catalog(6):
        ours.setdefault((g.n, g.edge_count()), []).append(to_nx(g))
    for g in atlas:
        if g.n > 6:
            continue
        assert any(nx.is_isomorphic(to_nx(g), h) for h in ours[(g.n, g.edge_count())])


def test_connected_filter_and_order():
    gs = list(catalog(5, connected=True, n_min=1))
    assert all(is_connected(g) for g in gs)
    keys = [catalog_key(g) for g in gs]
    assert [k[0] for k in keys] == sorted(k[0] for k in keys)
