import csv
import io
import json

import pytest

from chiconn.coloring import chromatic_number, find_respecting_coloring
from chiconn.extremal import (
    core,
    empirical_g,
    g_lower_bound,
    h_construction,
    qualifying_subgraph,
    records_to_csv,
    records_to_json,
    star_witness,
    theorem_oracle,
    upper_bound,
)
from chiconn.graph import Graph
from chiconn.proof import HypothesisError


@pytest.mark.parametrize("k", [1, 2, 3])
def test_star_witness(k):
    inst = star_witness(k)
    assert inst.graph.n == 2 * k and inst.ncolors == 3 * k - 2
    assert inst.template.cost(k) == 2 * k * k - 1
    assert find_respecting_coloring(inst.graph, inst.template, inst.ncolors) is None
    assert all(inst.check().values())
    assert qualifying_subgraph(inst.graph, 2, 1, 1) is None


@pytest.mark.parametrize("k,csize", [(1, 2), (1, 5), (2, 5), (2, 8), (3, 9)])
def test_h_construction(k, csize):
    inst = h_construction(k, csize)
    m = csize - 2 * k + 4
    assert inst.graph.n == 2 * k - 1 + m - 2
    assert chromatic_number(inst.graph) == m - 1
    assert all(inst.check().values())


def test_h_construction_rejects_small_palette():
    with pytest.raises(ValueError):
        h_construction(2, 2)


def test_core_and_qualifying_subgraph():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])
    assert core(g, 2) == 0b00111
    assert qualifying_subgraph(g, 2, 3, 3) == [0, 1, 2]
    assert qualifying_subgraph(g, 3, 1, 1) is None


def test_theorem_oracle():
    assert theorem_oracle(Graph.complete(4), 1)
    assert theorem_oracle(Graph.cycle(5), 1)  # below threshold
    assert theorem_oracle(Graph.complete(7), 2)
    assert theorem_oracle(Graph.wheel(5), 1, "prop_4k")
    with pytest.raises(HypothesisError):
        theorem_oracle(Graph.complete(13), 1)


def test_upper_bound():
    assert upper_bound(1, 4) == 4 and upper_bound(1, 2) == 4
    assert upper_bound(16, 3) == 49 and upper_bound(2, 9) == 11


def test_empirical_g_small():
    records = empirical_g(1, 3, 6)
    assert g_lower_bound(records) == 3
    assert not any(r.violation for r in records)
    witness = [r for r in records if r.verdict == "lower-bound-witness"]
    assert [r.n for r in witness] == [0, 1, 2]


def test_record_serialisation():
    records = empirical_g(1, 4, 5)
    rows = list(csv.DictReader(io.StringIO(records_to_csv(records))))
    assert [int(r["n"]) for r in rows] == [r.n for r in records]
    data = json.loads(records_to_json(records))
    assert data[-1]["n"] == 5 and data[-1]["verdict"] == "upper-bound-consistent"
