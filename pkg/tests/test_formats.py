import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chiconn.formats import from_edge_list, from_graph6, parse_graphs, read_graphs, to_edge_list, to_graph6, write_graph6
from chiconn.graph import Graph, GraphInputError, random_graph
from conftest import to_nx
from test_graph import graphs


def test_graph6_known_strings():
    assert to_graph6(Graph.cycle(5)) == "Dhc"
    assert to_graph6(Graph.complete(4)) == "C~"
    assert from_graph6(">>graph6<<Dhc") == Graph.cycle(5)


@given(graphs(max_n=12))
def test_graph6_roundtrip_and_networkx_agreement(g):
    text = to_graph6(g)
    assert from_graph6(text) == g
    ours = nx.from_graph6_bytes(text.encode())
    assert sorted(map(sorted, ours.edges())) == sorted(map(list, g.edges()))


def test_graph6_large_n():
    g = random_graph(70, 0.1, 5)
    assert from_graph6(to_graph6(g)) == g
    assert to_graph6(g) == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


@pytest.mark.parametrize("bad", ["", "D", "Dh", "D\x7f\x7f", "Dhcc"])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(GraphInputError):
        from_graph6(bad)


@given(graphs(max_n=10))
def test_edge_list_roundtrip(g):
    assert from_edge_list(to_edge_list(g)) == g


def test_edge_list_errors():
    with pytest.raises(GraphInputError):
        from_edge_list("3 2\n0 1\n")
    with pytest.raises(GraphInputError):
        from_edge_list("3 2\n0 1\n1 0\n")
    assert from_edge_list("# comment\n3 1\n0 2\n") == Graph.from_edges(3, [(0, 2)])


def test_parse_and_files(tmp_path):
    gs = [Graph.cycle(5), Graph.complete(3)]
    path = tmp_path / "g.g6"
    write_graph6(gs, path)
    assert read_graphs(path) == gs
    assert parse_graphs("4 2\n0 1\n2 3\n") == [Graph.from_edges(4, [(0, 1), (2, 3)])]
