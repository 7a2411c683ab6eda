import json
from fractions import Fraction

import pytest

from chiconn.coloring import find_respecting_coloring, respects
from chiconn.errors import InvariantViolation
from chiconn.extremal import h_construction
from chiconn.graph import Graph, vertex_connectivity_at_least
from chiconn.instances import multipartite_instance, random_instance
from chiconn.proof import (
    HypothesisError,
    chi_threshold,
    colour_classes,
    extend_316k,
    extend_4k,
    extract_subgraph,
    min_colors_316k,
    pigeonhole_assign,
    reduce_classes,
)
from chiconn.template import EMPTY, Template

C5_TEMPLATE = Template({0: 1}, {1: frozenset({2})})

# seeds of multipartite_instance reaching rarely used parts of the pipeline
CHI8_SEEDS = [(False, 1847), (False, 2031), (False, 2519), (True, 2847)]
J_SHRINK_SEEDS = [109, 324, 1596, 1807]
NEGATIVE_X_SEED = 914


def weighted_class(weights, k):
    """One stable class whose vertex v forbids colours 1..weights[v]."""
    n = len(weights)
    t = Template({}, {v: frozenset(range(1, w + 1)) for v, w in enumerate(weights) if w})
    return Graph.empty(n), t


def test_min_colours_and_thresholds():
    assert [min_colors_316k(k) for k in (1, 2, 3, 16, 17)] == [3, 6, 9, 48, 52]
    assert chi_threshold(2, "thm_main") == 7 and chi_threshold(2, "prop_4k") == 7
    assert chi_threshold(1, "thm_main") == 4 and chi_threshold(3, "prop_4k") == 11
    for k in range(1, 200):
        assert min_colors_316k(k) + 1 == -(-Fraction(49, 16) * k // 1)


def test_reduce_four_unit_weights():
    g, t = weighted_class([1, 1, 1, 1], 2)
    state = reduce_classes(g, t, [[0, 1, 2, 3]], 2, 6)
    cl = state.classes[0]
    assert (cl.p, cl.q, cl.t) == (2, 1, 1)
    assert len(cl.reduced) == 2 and state.w(cl.reduced) >= 2
    assert [state.w(part) for part in cl.parts] == [1, 1]
    assert len({state.colour[v] for v in cl.reduced}) <= 1


def test_reduce_zero_weight_class():
    g = Graph.empty(3)
    state = reduce_classes(g, EMPTY, [[0, 1, 2]], 2, 6)
    cl = state.classes[0]
    assert (cl.p, cl.q, cl.t) == (0, 0, 0) and cl.reduced == () and len(cl.parts) == 1


def test_reduce_single_light_vertex():
    g, t = weighted_class([2], 3)
    state = reduce_classes(g, t, [[0]], 3, 8)
    cl = state.classes[0]
    assert (cl.p, cl.q, cl.t) == (0, 0, 0) and cl.parts == [(0,)]


def test_reduce_pads_empty_classes():
    g = Graph.from_edges(2, [(0, 1)])
    t = Template({0: 1, 1: 2})
    state = reduce_classes(g, t, [[0], [1]], 2, 6)
    assert [cl.members for cl in state.classes] == [(2,), (3,)]
    assert all(cl.weight == 0 for cl in state.classes)


def test_reduce_can_leave_negative_slack():
    # x_i = w(X_i) - t_i k is negative here: P_i' weighs 7 >= q_i k = 6 but X_i only 23 < 4k
    g, t = weighted_class([3, 4, 4, 4, 5, 5, 5], 6)
    state = reduce_classes(g, t, [list(range(7))], 6, 18)
    cl = state.classes[0]
    assert (cl.p, cl.q, cl.t, cl.x) == (5, 1, 4, -1)


def test_pigeonhole_assign():
    lists = [{1, 2}, {3}, {2, 4}, {5}]
    out = pigeonhole_assign(lists)
    assert out[0] == out[2] == 2 and len(set(out)) <= 3
    assert all(c in s for c, s in zip(out, lists))
    with pytest.raises(InvariantViolation):
        pigeonhole_assign([{1}, {2}])


def test_extend_4k_examples():
    c5 = Graph.cycle(5)
    f = extend_4k(c5, C5_TEMPLATE, colour_classes(c5), 2, 6)
    assert respects(c5, f, C5_TEMPLATE, 6) and f[0] == 1 and f[1] != 2
    g = Graph.petersen()
    assert respects(g, extend_4k(g, EMPTY, colour_classes(g), 1, 4), EMPTY, 4)
    p4 = Graph.path(4)
    assert respects(p4, extend_4k(p4, EMPTY, colour_classes(p4), 1, 3), EMPTY, 3)
    with pytest.raises(HypothesisError):
        extend_4k(p4, EMPTY, colour_classes(p4), 1, 2)  # chi = 2 > |C| - 2k + 1 = 1


def test_extend_316k_examples():
    c5 = Graph.cycle(5)
    f = extend_316k(c5, C5_TEMPLATE, colour_classes(c5), 2, 6)
    assert respects(c5, f, C5_TEMPLATE, 6)
    g = Graph.wheel(5)
    assert respects(g, extend_316k(g, EMPTY, colour_classes(g), 1, 5), EMPTY, 5)
    h = h_construction(2, 5)
    with pytest.raises(HypothesisError):
        extend_316k(h.graph, h.template, colour_classes(h.graph), 2, 5)
    assert find_respecting_coloring(h.graph, h.template, 5) is None


@pytest.mark.parametrize("run", [extend_4k, extend_316k])
def test_hypothesis_errors(run):
    c5 = Graph.cycle(5)
    parts = colour_classes(c5)
    with pytest.raises(HypothesisError):
        run(c5, Template({}, {0: frozenset({1, 2})}), parts, 2, 6)  # not good
    with pytest.raises(HypothesisError):
        run(c5, Template({0: 1, 1: 2, 2: 1, 3: 2}), parts, 2, 6)  # cost 8
    with pytest.raises(HypothesisError):
        run(c5, EMPTY, [[0, 1], [2, 3], [4]], 2, 6)  # class not stable
    with pytest.raises(HypothesisError):
        run(c5, EMPTY, [[0, 2], [1, 3]], 2, 6)  # vertex 4 missing


@pytest.mark.parametrize("variant,run", [("4k", extend_4k), ("316k", extend_316k)])
def test_random_instances_agree_with_solver(variant, run):
    for seed in range(200):
        inst = random_instance(seed, variant)
        states = []
        f = run(inst.g, inst.template, inst.partition, inst.k, inst.ncolors, states)
        assert respects(inst.g, f, inst.template, inst.ncolors)
        assert find_respecting_coloring(inst.g, inst.template, inst.ncolors) is not None
        assert not states[0].fallbacks


def _run_multipartite(full, seed):
    inst = multipartite_instance(seed, full=full)
    states = []
    f = extend_316k(inst.g, inst.template, inst.partition, inst.k, inst.ncolors, states)
    assert respects(inst.g, f, inst.template, inst.ncolors)
    assert not states[0].fallbacks
    return inst, states[0]


@pytest.mark.parametrize("full,seed", CHI8_SEEDS)
def test_final_branch_instances(full, seed):
    inst, state = _run_multipartite(full, seed)
    assert state.branch == "chi8"
    k, tp, d, dp = inst.k, state.t_prime, state.d, state.d_prime
    assert (k - (tp + dp)) * (tp - dp) <= 2 * d * (tp + dp)
    assert state.checks["eq-chi8"] == 1


@pytest.mark.parametrize("seed", J_SHRINK_SEEDS)
def test_claim16_drops_one_class(seed):
    _, state = _run_multipartite(True, seed)
    assert len(state.J) == len(state.I) - 1
    assert set(state.I1) <= set(state.J)


def test_negative_slack_class_lands_in_I2():
    _, state = _run_multipartite(False, NEGATIVE_X_SEED)
    negative = [cl.index for cl in state.classes if cl.x < 0]
    assert negative and set(negative) <= set(state.I2)


def test_all_branches_seen_on_multipartite_instances():
    seen = set()
    for seed in range(60):
        seen.add(_run_multipartite(seed % 2 == 0, seed)[1].branch)
    assert {"empty", "chi12", "chi14"} <= seen


def test_trace_is_json_serialisable():
    c5 = Graph.cycle(5)
    states = []
    extend_316k(c5, C5_TEMPLATE, colour_classes(c5), 2, 6, states)
    trace = json.loads(json.dumps(states[0].trace))
    assert [snap["stage"] for snap in trace] == ["reduce", "I2", "P3", "Y"]
    assert trace[0]["t"] == 3 and trace[0]["p"] == 0


def test_extract_examples():
    vertices, report = extract_subgraph(Graph.complete(7), 2)
    assert report["status"] == "pass" and len(vertices) > 5
    vertices, report = extract_subgraph(Graph.wheel(5), 1)
    assert vertices == list(range(6)) and report["subgraph_chi"] == 4
    k4_pendant = Graph.from_edges(5, [(a, b) for a in range(4) for b in range(a + 1, 4)] + [(3, 4)])
    vertices, report = extract_subgraph(k4_pendant, 1)
    assert vertices == [0, 1, 2, 3] and report["status"] == "pass"
    with pytest.raises(HypothesisError):
        extract_subgraph(Graph.cycle(5), 1)


def test_extract_prop_4k_and_heuristic():
    g = Graph.complete(7)
    vertices, report = extract_subgraph(g, 2, "prop_4k", "heuristic")
    assert report["status"] == "pass" and not report["certified_minimal"]
    assert vertex_connectivity_at_least(Graph.complete(len(vertices)), 3)
