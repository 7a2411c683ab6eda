"""Tightness constructions and brute-force searches around g(k, m).

g(k, m) is the least n such that every graph with chromatic number >= n has
a (k+1)-connected subgraph with chromatic number >= m. Subgraphs may be taken
induced: adding the missing edges back keeps both connectivity and chromatic
number at least as large.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .catalog import catalog
from .coloring import BudgetExhausted, chromatic_number
from .formats import to_graph6
from .graph import Graph, induced_subgraph, mask_of, popcount, vertex_connectivity_at_least
from .proof import HypothesisError, chi_threshold
from .template import Template
from .witness import verify_witness

DEFAULT_SUBSET_BUDGET = int(os.environ.get("CHICONN_SUBSET_BUDGET", "1000000"))


@dataclass(frozen=True)
class ConstructionInstance:
    graph: Graph
    template: Template
    ncolors: int
    k: int
    expected_chi: int
    label: str

    def check(self) -> dict[str, bool]:
        return {
            "witness": verify_witness(self.graph, self.template, self.k, self.ncolors),
            "chromatic": chromatic_number(self.graph) == self.expected_chi,
        }


def star_witness(k: int) -> ConstructionInstance:
    """A star on 2k vertices that is inextensible for 3k-2 colours.

    Leaves 1..2k-1 get the distinct colours 1..2k-1; the centre 0 forbids
    the remaining k-1 colours, so it has nothing left.
    """
    if k < 1:
        raise ValueError("k must be positive")
    g = Graph.star(2 * k - 1)
    colors = {v: v for v in range(1, 2 * k)}
    forbidden = {0: frozenset(range(2 * k, 3 * k - 1))}
    return ConstructionInstance(g, Template(colors, forbidden), 3 * k - 2, k, 2, "star")


def h_construction(k: int, csize: int) -> ConstructionInstance:
    """H_{k,m} for m = csize - 2k + 4: a stable set S of size 2k-1 joined to K_{m-2}.

    S is precoloured with 2k-1 distinct colours, leaving m-3 colours for a
    clique on m-2 vertices. chi(H) = m - 1.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if csize < 2 * k - 1:
        raise ValueError(f"need |C| >= 2k-1 = {2 * k - 1}, got {csize}")
    m = csize - 2 * k + 4
    s_size = 2 * k - 1
    n = s_size + m - 2
    edges = [(a, b) for a in range(s_size, n) for b in range(a + 1, n)]
    edges += [(a, b) for a in range(s_size) for b in range(s_size, n)]
    g = Graph.from_edges(n, edges)
    colors = {v: v + 1 for v in range(s_size)}
    return ConstructionInstance(g, Template(colors), csize, k, m - 1, "h_construction")


def _min_degree_within(g: Graph, mask: int) -> int:
    return min((popcount(g.adj[v] & mask) for v in range(g.n) if mask >> v & 1), default=0)


def core(g: Graph, degree: int) -> int:
    """Mask of the ``degree``-core: repeatedly drop vertices of smaller degree."""
    mask = (1 << g.n) - 1
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            if mask >> v & 1 and popcount(g.adj[v] & mask) < degree:
                mask &= ~(1 << v)
                changed = True
    return mask


def qualifying_subgraph(g: Graph, kappa: int, min_size: int, min_chi: int,
                        budget: int | None = None) -> list[int] | None:
    """Vertices of a kappa-connected induced subgraph with >= min_size vertices and chi >= min_chi.

    Larger sets are tried first. Candidates live in the kappa-core, and every
    set must have minimum degree >= kappa before the exact checks run.
    """
    budget = DEFAULT_SUBSET_BUDGET if budget is None else budget
    pool = [v for v in range(g.n) if core(g, kappa) >> v & 1]
    lowest = max(min_size, kappa + 1, min_chi, 1)
    seen = 0
    for size in range(len(pool), lowest - 1, -1):
        for subset in combinations(pool, size):
            seen += 1
            if seen > budget:
                raise BudgetExhausted("subset enumeration", budget)
            mask = mask_of(subset)
            if _min_degree_within(g, mask) < kappa:
                continue
            h = induced_subgraph(g, subset)
            if chromatic_number(h) >= min_chi and vertex_connectivity_at_least(h, kappa):
                return list(subset)
    return None


def theorem_oracle(g: Graph, k: int, variant: str = "thm_main", max_n: int = 12,
                   budget: int | None = None) -> bool:
    """Check the connected-subgraph guarantee on ``g`` by exhaustive search.

    Vacuously true when chi(g) is below the variant's threshold.
    """
    if g.n > max_n:
        raise HypothesisError(f"graph has {g.n} vertices, oracle bound is {max_n}")
    chi = chromatic_number(g)
    if chi < chi_threshold(k, variant):
        return True
    target = chi - 2 * k + (2 if variant == "thm_main" else 1)
    return qualifying_subgraph(g, k + 1, chi - k + 1, target, budget) is not None


@dataclass
class GBoundRecord:
    k: int
    m: int
    n: int  # chromatic number examined
    verdict: str  # "lower-bound-witness" | "upper-bound-consistent"
    witness_graph: Graph | None = None
    graphs_scanned: int = 0
    violation: bool = False
    partial: bool = False
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "k": self.k, "m": self.m, "n": self.n, "verdict": self.verdict,
            "witness_graph6": to_graph6(self.witness_graph) if self.witness_graph is not None else None,
            "graphs_scanned": self.graphs_scanned, "violation": self.violation,
            "partial": self.partial, "notes": list(self.notes),
        }


def upper_bound(k: int, m: int) -> int:
    """max(m + 2k - 2, ceil(49k/16)): chi at or above this forces the subgraph."""
    return max(m + 2 * k - 2, -(-49 * k // 16))


def empirical_g(k: int, m: int, n_max: int, graphs: Iterable[Graph] | None = None,
                budget: int | None = None) -> list[GBoundRecord]:
    """Scan graphs on <= n_max vertices for lower-bound witnesses of g(k, m).

    One record per chromatic number found. A witness is a graph of that
    chromatic number with no (k+1)-connected subgraph of chromatic number
    >= m; the first witness in scan order is kept. A witness at or above
    :func:`upper_bound` is flagged as a violation.
    """
    source = catalog(n_max) if graphs is None else graphs
    records: dict[int, GBoundRecord] = {}
    bound = upper_bound(k, m)
    for g in source:
        if g.n > n_max:
            continue
        chi = chromatic_number(g)
        rec = records.setdefault(chi, GBoundRecord(k, m, chi, "upper-bound-consistent"))
        rec.graphs_scanned += 1
        if rec.witness_graph is not None:
            continue
        if chi < m:
            found = None
        else:
            try:
                found = qualifying_subgraph(g, k + 1, 1, m, budget)
            except BudgetExhausted:
                rec.partial = True
                rec.notes.append(f"budget exhausted on {to_graph6(g)}")
                continue
        if found is None:
            rec.verdict = "lower-bound-witness"
            rec.witness_graph = g
            rec.violation = chi >= bound
    return [records[c] for c in sorted(records)]


def g_lower_bound(records: list[GBoundRecord]) -> int:
    """1 + the largest chromatic number with a witness (a lower bound on g(k, m))."""
    return 1 + max((r.n for r in records if r.verdict == "lower-bound-witness"), default=0)


CSV_FIELDS = ["k", "m", "n", "verdict", "witness_graph6", "graphs_scanned", "violation", "partial"]


def records_to_csv(records: list[GBoundRecord]) -> str:
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=CSV_FIELDS, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow(rec.to_json())
    return out.getvalue()


def records_to_json(records: list[GBoundRecord]) -> str:
    return json.dumps([rec.to_json() for rec in records], indent=2, sort_keys=True)


__all__ = [
    "ConstructionInstance",
    "GBoundRecord",
    "core",
    "empirical_g",
    "g_lower_bound",
    "h_construction",
    "qualifying_subgraph",
    "records_to_csv",
    "records_to_json",
    "star_witness",
    "theorem_oracle",
    "upper_bound",
]
