"""Acceptance gate: one PASS/FAIL line per criterion, exact integer checks throughout."""

import random
import time
from collections import Counter
from functools import lru_cache
from itertools import combinations_with_replacement, product

import numpy as np
import pytest

from chiconn.catalog import catalog
from chiconn.coloring import chromatic_number, find_respecting_coloring, respects
from chiconn.extremal import empirical_g, g_lower_bound, h_construction, qualifying_subgraph, star_witness, theorem_oracle
from chiconn.graph import Graph, random_graph, vertex_connectivity_at_least
from chiconn.instances import multipartite_instance, random_instance
from chiconn.proof import extend_316k, extend_4k
from chiconn.sequences import check_critical, critical_sequence, partition_bounded
from chiconn.template import Template
from chiconn.witness import check_degree_bounds, goodify, is_minimally_inextensible, verify_witness


@pytest.fixture
def announce(capsys):
    def emit(number, name, ok, detail, started):
        with capsys.disabled():
            verdict = "PASS" if ok else "FAIL"
            print(f"\n[acceptance {number}] {verdict} {name}: {detail} ({time.perf_counter() - started:.1f}s)")
        assert ok, detail
    return emit


def test_criterion_1_theorem_sweep(announce):
    start = time.perf_counter()
    scanned = failures = 0
    for g in catalog(8, connected=True, n_min=1):
        if chromatic_number(g) < 4:
            continue
        scanned += 1
        failures += not theorem_oracle(g, 1)
    announce(1, "theorem sweep k=1, n<=8, chi>=4", failures == 0 and scanned > 0,
             f"{scanned} graphs, {failures} failures", start)


def test_criterion_2_minimal_graphs(announce):
    start = time.perf_counter()
    found = Counter()
    problems = []
    for g in catalog(7, n_min=1):
        for ncolors in (2, 3):
            w = is_minimally_inextensible(g, 1, ncolors)
            if w is None:
                continue
            found[ncolors] += 1
            good = goodify(g, w)
            if not verify_witness(g, good.template, 1, ncolors):
                problems.append(f"goodified template lost witness status on n={g.n}")
            if g.n <= ncolors:
                problems.append(f"{g.n} vertices, |C|={ncolors}")
            if not vertex_connectivity_at_least(g, 2):
                problems.append(f"not 2-connected, n={g.n}")
            problems += check_degree_bounds(g, good.template, 1, ncolors)
    ok = not problems and found[2] > 0 and found[3] > 0
    announce(2, "minimally inextensible graphs k=1, |C| in {2,3}, n<=7", ok,
             f"{dict(found)} minimal graphs, {len(problems)} problems", start)


def test_criterion_3_tightness(announce):
    start = time.perf_counter()
    bad = []
    for k in (1, 2, 3):
        inst = star_witness(k)
        if inst.ncolors != 3 * k - 2 or not verify_witness(inst.graph, inst.template, k, inst.ncolors):
            bad.append(f"star k={k}: not a witness")
        if qualifying_subgraph(inst.graph, 2, 1, 1) is not None:
            bad.append(f"star k={k}: has a 2-connected subgraph")
    cells = 0
    for k in (1, 2, 3):
        for csize in range(2 * k - 1, 10):
            inst = h_construction(k, csize)
            cells += 1
            if chromatic_number(inst.graph) != csize - 2 * k + 3:
                bad.append(f"h k={k} |C|={csize}: chi mismatch")
            if not verify_witness(inst.graph, inst.template, k, csize):
                bad.append(f"h k={k} |C|={csize}: not a witness")
    announce(3, "star and H tightness", not bad, f"3 stars, {cells} H cells, {len(bad)} failures", start)


REQUIRED_CHECKS = {
    "4k": {"eq-chi6", "eq-chi7"},
    "316k": {"eq-chi1", "eq-chi3", "eq-chi4", "eq-chi6", "eq-chi7", "eq-chi9"},
}


def _run_instance(run, inst, seen, branches):
    states = []
    f = run(inst.g, inst.template, inst.partition, inst.k, inst.ncolors, states)
    state = states[0]
    seen.update(state.checks)
    branches[state.branch] += 1
    ok = respects(inst.g, f, inst.template, inst.ncolors) and not state.fallbacks
    if state.branch == "chi8":
        k, tp, d, dp = inst.k, state.t_prime, state.d, state.d_prime
        ok &= (k - (tp + dp)) * (tp - dp) <= 2 * d * (tp + dp)
    return ok


@pytest.mark.parametrize("variant", ["4k", "316k"])
def test_criterion_4_extension_pipelines(variant, announce):
    start = time.perf_counter()
    run = extend_4k if variant == "4k" else extend_316k
    seen, branches = Counter(), Counter()
    failures = disagreements = 0
    seeds = 1000
    for seed in range(seeds):
        inst = random_instance(seed, variant)
        failures += not _run_instance(run, inst, seen, branches)
        disagreements += find_respecting_coloring(inst.g, inst.template, inst.ncolors) is None
    detail = f"{seeds} random instances, {failures} failures, {disagreements} solver disagreements"
    if variant == "316k":
        # small k never reaches the last branch; large-k multipartite instances do
        for seed in range(300):
            failures += not _run_instance(run, multipartite_instance(seed, full=seed % 2 == 1), seen, branches)
        failures += not _run_instance(run, multipartite_instance(2847, full=True), seen, branches)
        detail += f"; +301 multipartite, branches {dict(sorted(branches.items(), key=str))}"
    missing = REQUIRED_CHECKS[variant] - set(seen)
    if variant == "316k" and not branches["chi8"]:
        missing.add("eq-chi8")
    ok = failures == 0 and disagreements == 0 and not missing
    announce(4, f"extension pipeline {variant}", ok, detail + (f", unchecked {sorted(missing)}" if missing else ""), start)


def _brute_partition(values, k, q):
    """Does some assignment of values into q labelled parts keep every part sum < 2k?"""
    for labels in product(range(q), repeat=len(values)):
        sums = [0] * q
        for a, lab in zip(values, labels):
            sums[lab] += a
        if max(sums) < 2 * k:
            return True
    return False


def test_criterion_5_sequence_kit(announce):
    start = time.perf_counter()
    cases = bad = 0
    for k in range(1, 5):
        for size in range(0, 7):
            for values in combinations_with_replacement(range(k + 1), size):
                total = sum(values)
                q = total // k
                if q < 1:
                    continue
                cases += 1
                parts = partition_bounded(list(values), k, q)
                valid = (len(parts) == q and sorted(a for p in parts for a in p) == sorted(values)
                         and all(sum(p) < 2 * k for p in parts))
                bad += valid != _brute_partition(values, k, q) or not valid
    rng = random.Random(5)
    for _ in range(10_000):
        k = rng.randint(1, 8)
        ws = [rng.randint(0, k - 1) for _ in range(rng.randint(1, 16))]
        weight = dict(enumerate(ws))
        seq = critical_sequence(range(len(ws)), weight, k)
        prof = check_critical(seq)
        bad += not (prof.jump_count == sum(ws) // k and prof.ell == seq.n - sum(ws) // k
                    and seq.members() == set(range(len(ws))))
    announce(5, "bounded partitions and critical sequences", bad == 0,
             f"{cases} multisets, 10000 classes, {bad} failures", start)


def test_criterion_6_g1m(announce):
    start = time.perf_counter()
    found = {}
    violations = 0
    for m in range(2, 6):
        records = empirical_g(1, m, 8)
        found[m] = g_lower_bound(records)
        violations += sum(r.violation or r.partial for r in records)
    ok = violations == 0 and all(found[m] == max(m, 3) for m in found)
    announce(6, "g(1,m) = max(m,3) for m<=5 over n<=8", ok,
             f"lower bounds {found}, {violations} violations", start)


@lru_cache(maxsize=None)
def _all_assignments(n, ncolors):
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    grids = np.indices((ncolors,) * n).reshape(n, -1).T + 1
    return grids.astype(np.int8)


def numpy_respecting(g: Graph, t: Template, ncolors: int) -> bool:
    f = _all_assignments(g.n, ncolors)
    keep = np.ones(len(f), dtype=bool)
    for u, v in g.edges():
        keep &= f[:, u] != f[:, v]
    for v, c in t.colors.items():
        keep &= f[:, v] == c
    for v, fs in t.forbidden.items():
        keep &= ~np.isin(f[:, v], list(fs))
    return bool(keep.any())


def test_criterion_7_solver_differential(announce):
    start = time.perf_counter()
    rng = random.Random(7)
    disagreements = sat = 0
    for _ in range(10_000):
        n = rng.randint(1, 6)
        ncolors = rng.randint(1, 5)
        g = random_graph(n, rng.random(), rng.randrange(2**32))
        colors = {}
        for v in rng.sample(range(n), rng.randint(0, n)):
            taken = {colors[u] for u in g.neighbors(v) if u in colors}
            free = [c for c in range(1, ncolors + 1) if c not in taken]
            if free and rng.random() < 0.5:
                colors[v] = rng.choice(free)
        forbidden = {v: frozenset(rng.sample(range(1, ncolors + 1), rng.randint(0, ncolors)))
                     for v in range(n) if v not in colors and rng.random() < 0.5}
        t = Template(colors, forbidden)
        expected = numpy_respecting(g, t, ncolors)
        f = find_respecting_coloring(g, t, ncolors)
        got = f is not None and respects(g, f, t, ncolors)
        sat += expected
        disagreements += got != expected
    announce(7, "solver vs exhaustive enumeration, n<=6", disagreements == 0,
             f"10000 triples ({sat} SAT), {disagreements} disagreements", start)
