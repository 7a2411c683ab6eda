"""Inextensibility witnesses, the goodification step, exhaustive witness search
and extraction of minimally inextensible induced subgraphs.

A template T witnesses C-inextensibility of G when cost_k(T) < 2k^2, every
|F(v)| <= k, and no proper C-colouring of G respects T.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from .coloring import BudgetExhausted, chromatic_number, find_respecting_coloring
from .errors import check
from .graph import Graph, induced_subgraph, vertex_connectivity_at_least
from .template import EMPTY, Template

log = logging.getLogger(__name__)

DEFAULT_TEMPLATE_BUDGET = int(os.environ.get("CHICONN_TEMPLATE_BUDGET", "200000"))


class WitnessInputError(ValueError):
    pass


@dataclass(frozen=True)
class Witness:
    template: Template
    k: int
    ncolors: int

    @property
    def cost(self) -> int:
        return self.template.cost(self.k)

    def is_good(self) -> bool:
        return self.template.max_forbidden() <= self.k - 1

    def to_json(self) -> dict:
        return {"template": self.template.to_json(), "k": self.k, "colors": self.ncolors, "cost": self.cost}


def witness_shape_ok(t: Template, k: int) -> bool:
    """The two counting conditions: cost below 2k^2 and every |F(v)| <= k."""
    return t.cost(k) < 2 * k * k and t.max_forbidden() <= k


def verify_witness(g: Graph, t: Template, k: int, ncolors: int, budget: int | None = None) -> bool:
    """True iff ``t`` witnesses C-inextensibility of ``g``.

    Raises :class:`BudgetExhausted` when the colouring search cannot decide.
    """
    t.validate(g, ncolors)
    if not witness_shape_ok(t, k):
        return False
    return find_respecting_coloring(g, t, ncolors, budget) is None


def goodify(g: Graph, w: Witness, budget: int | None = None) -> Witness:
    """Turn a witness into a good one (every |F(v)| <= k-1), preserving the cost.

    While some uncoloured v has |F(v)| = k, precolour v with the least colour
    outside c(S) and F(v). Precolouring costs k and drops |F(v)| = k, so the
    cost is unchanged, and any colouring respecting the new template respects
    the old one.
    """
    k, ncolors = w.k, w.ncolors
    if ncolors < 3 * k - 1:
        raise WitnessInputError(f"goodify needs |C| >= 3k-1 = {3 * k - 1}, got {ncolors}")
    t = w.template
    cost = t.cost(k)
    while True:
        full = sorted(v for v, fs in t.forbidden.items() if len(fs) == k)
        if not full:
            break
        v = full[0]
        blocked = set(t.colors.values()) | t.F(v)
        free = [c for c in range(1, ncolors + 1) if c not in blocked]
        check(bool(free), "lemma-2.1:free-colour", f"no colour left for vertex {v}", t.to_json())
        colors = dict(t.colors)
        colors[v] = free[0]
        forbidden = {u: fs for u, fs in t.forbidden.items() if u != v}
        t = Template(colors, forbidden)
        check(t.cost(k) == cost, "lemma-2.1:cost", f"cost changed {cost} -> {t.cost(k)}")
    return Witness(t, k, ncolors)


def check_degree_bounds(g: Graph, t: Template, k: int, ncolors: int) -> list[str]:
    """Degree conditions satisfied by a good template on a minimally inextensible graph.

    Each precoloured vertex has more than k neighbours outside S; each
    uncoloured vertex has more than |C| - k neighbours. Returns violations.
    """
    s_mask = 0
    for v in t.colors:
        s_mask |= 1 << v
    problems = []
    for v in range(g.n):
        if v in t.colors:
            outside = (g.adj[v] & ~s_mask).bit_count()
            if outside <= k:
                problems.append(f"claim-3.3: precoloured {v} has {outside} <= {k} neighbours outside S")
        elif g.degree(v) <= ncolors - k:
            problems.append(f"claim-3.4: uncoloured {v} has degree {g.degree(v)} <= {ncolors - k}")
    return problems


# --- exhaustive search -----------------------------------------------------


def _canonical_colorings(g: Graph, s: tuple[int, ...], ncolors: int) -> Iterator[dict[int, int]]:
    """Proper colourings of G[s], one per orbit of colour permutations.

    Colours are numbered by first appearance along ``s``.
    """
    col: dict[int, int] = {}

    def rec(i: int, used: int) -> Iterator[dict[int, int]]:
        if i == len(s):
            yield dict(col)
            return
        v = s[i]
        for c in range(1, min(used + 1, ncolors) + 1):
            if any(col.get(u) == c for u in s[:i] if g.has_edge(u, v)):
                continue
            col[v] = c
            yield from rec(i + 1, max(used, c))
            del col[v]

    yield from rec(0, 0)


def _size_vectors(count: int, cap: int, budget: int) -> Iterator[tuple[int, ...]]:
    """Vectors of |F(v)| in [0, cap] that are maximal under the total ``budget``:
    they spend it exactly, or saturate every entry."""
    if count == 0:
        yield ()
        return
    if cap * count <= budget:
        yield (cap,) * count
        return

    def rec(i: int, left: int) -> Iterator[tuple[int, ...]]:
        if i == count:
            if left == 0:
                yield ()
            return
        remaining = count - i - 1
        for a in range(min(cap, left), -1, -1):
            if left - a <= cap * remaining:
                for tail in rec(i + 1, left - a):
                    yield (a,) + tail

    yield from rec(0, budget)


def _forbidden_choices(
    verts: tuple[int, ...], sizes: tuple[int, ...], touched: int, ncolors: int
) -> Iterator[dict[int, frozenset[int]]]:
    """Forbidden sets of the given sizes, canonical up to renaming untouched colours.

    Colours 1..touched have already appeared; a set may take any of those plus
    the next j fresh colours.
    """
    out: dict[int, frozenset[int]] = {}

    def rec(i: int, touched: int) -> Iterator[dict[int, frozenset[int]]]:
        if i == len(verts):
            yield dict(out)
            return
        size = sizes[i]
        for fresh in range(0, size + 1):
            if touched + fresh > ncolors or size - fresh > touched:
                continue
            new = tuple(range(touched + 1, touched + fresh + 1))
            for old in combinations(range(1, touched + 1), size - fresh):
                if size:
                    out[verts[i]] = frozenset(old + new)
                yield from rec(i + 1, touched + fresh)
                out.pop(verts[i], None)

    yield from rec(0, touched)


def candidate_templates(g: Graph, k: int, ncolors: int) -> Iterator[Template]:
    """All witness-shaped templates that matter for deciding inextensibility.

    Enumerated up to colour permutation, with forbidden sets maximal within the
    cost budget (adding forbidden colours never makes a template colourable).
    The empty template comes first.
    """
    yield EMPTY
    limit = 2 * k * k - 1
    cap = min(k, ncolors)
    for size in range(0, min(g.n, limit // k) + 1):
        for s in combinations(range(g.n), size):
            rest = tuple(v for v in range(g.n) if v not in s)
            spend = limit - k * size
            for col in _canonical_colorings(g, s, ncolors):
                touched = max(col.values(), default=0)
                for sizes in _size_vectors(len(rest), cap, spend):
                    for forbidden in _forbidden_choices(rest, sizes, touched, ncolors):
                        yield Template(col, forbidden)


def enumerate_witness(g: Graph, k: int, ncolors: int, budget: int | None = None,
                      node_budget: int | None = None) -> Witness | None:
    """A witness of C-inextensibility of ``g`` if one exists, else None.

    Raises :class:`BudgetExhausted` after ``budget`` candidate templates.
    """
    budget = DEFAULT_TEMPLATE_BUDGET if budget is None else budget
    if k < 1:
        raise WitnessInputError("k must be positive")
    for count, t in enumerate(candidate_templates(g, k, ncolors), start=1):
        if count > budget:
            raise BudgetExhausted("template enumeration", budget)
        if find_respecting_coloring(g, t, ncolors, node_budget) is None:
            return Witness(t, k, ncolors)
    return None


# --- shrinking to a minimally inextensible subgraph ------------------------


@dataclass
class ShrinkResult:
    vertices: list[int]
    witness: Witness
    exact: bool
    certified: bool  # every proper induced subgraph proven extensible
    checks: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)


def _derived_templates(g: Graph, t: Template, v: int, k: int) -> Iterator[Template]:
    """Witness candidates on g - v obtained from a witness t on g by deleting v."""
    rest = [u for u in range(g.n) if u != v]
    yield t.restrict(rest)
    if v in t.colors:
        cv = t.colors[v]
        forbidden = dict(t.forbidden)
        for u in g.neighbors(v):
            if u not in t.colors:
                forbidden[u] = t.F(u) | {cv}
        moved = Template({u: c for u, c in t.colors.items() if u != v}, forbidden)
        if witness_shape_ok(moved, k):
            yield moved
    yield EMPTY


def minimal_inextensible_subgraph(
    g: Graph,
    k: int,
    ncolors: int,
    mode: str = "exact",
    start: Template | None = None,
    template_budget: int | None = None,
    node_budget: int | None = None,
) -> ShrinkResult:
    """Shrink ``g`` to an inextensible induced subgraph no vertex of which can be dropped.

    ``start`` is a known witness on ``g`` (default: the empty template, valid
    when |C| < chi(g)). Every step removes one vertex v for which g - v keeps
    a witness. Candidate witnesses derived from the current one are tried
    first; in exact mode the exhaustive search then decides, so the final
    graph is minimally inextensible. In heuristic mode only derived candidates
    are tried and minimality is not certified.
    """
    if mode not in ("exact", "heuristic"):
        raise WitnessInputError(f"unknown mode {mode!r}")
    exact = mode == "exact"
    t = EMPTY if start is None else start
    if not verify_witness(g, t, k, ncolors, node_budget):
        raise WitnessInputError("starting template is not a witness on g")
    good_possible = ncolors >= 3 * k - 1
    current = list(range(g.n))
    witness = Witness(t, k, ncolors)
    if good_possible:
        witness = goodify(g, witness)
    notes: list[str] = []

    changed = True
    while changed:
        changed = False
        sub = induced_subgraph(g, current)
        local_t = witness.template.relabel({v: i for i, v in enumerate(current)})
        for i, v in enumerate(current):
            h = induced_subgraph(sub, [u for u in range(sub.n) if u != i])
            back = {u: (u if u < i else u - 1) for u in range(sub.n) if u != i}
            found = None
            for cand in _derived_templates(sub, local_t, i, k):
                cand_h = cand.relabel(back)
                if verify_witness(h, cand_h, k, ncolors, node_budget):
                    found = Witness(cand_h, k, ncolors)
                    break
            if found is None and exact:
                try:
                    found = enumerate_witness(h, k, ncolors, template_budget, node_budget)
                except BudgetExhausted:
                    notes.append(f"budget exhausted while testing removal of {v}; partial shrink {current}")
                    raise
            if found is None:
                continue
            if good_possible:
                found = goodify(h, found)
            kept = [u for u in current if u != v]
            witness = Witness(found.template.relabel(dict(enumerate(kept))), k, ncolors)
            current = kept
            changed = True
            break

    result = ShrinkResult(current, witness, exact=exact, certified=exact, notes=notes)
    h = induced_subgraph(g, current)
    local = witness.template.relabel({v: i for i, v in enumerate(current)})
    result.checks["witness"] = verify_witness(h, local, k, ncolors, node_budget)
    if good_possible:
        result.checks["lemma-3.2:size"] = len(current) > ncolors - k + 1
        result.checks["lemma-3.2:connectivity"] = vertex_connectivity_at_least(h, k + 1)
        degree_problems = check_degree_bounds(h, local, k, ncolors)
        result.checks["claims-3.3-3.4:degrees"] = not degree_problems
        result.notes.extend(degree_problems)
        if exact:
            for label in ("lemma-3.2:size", "lemma-3.2:connectivity"):
                check(result.checks[label], label, f"minimal subgraph {current} fails {label}")
    return result


def is_minimally_inextensible(g: Graph, k: int, ncolors: int, template_budget: int | None = None,
                              node_budget: int | None = None) -> Witness | None:
    """The witness on ``g`` if ``g`` is minimally inextensible, else None.

    Inextensibility passes to supergraphs (extend a witness by uncoloured
    vertices with no forbidden colours), so checking every g - v suffices.
    """
    w = enumerate_witness(g, k, ncolors, template_budget, node_budget)
    if w is None:
        return None
    for v in range(g.n):
        h = induced_subgraph(g, [u for u in range(g.n) if u != v])
        if enumerate_witness(h, k, ncolors, template_budget, node_budget) is not None:
            return None
    return w


def empty_template_witness(g: Graph, k: int) -> Witness:
    """The empty template on |C| = chi(g) - 1 colours."""
    chi = chromatic_number(g)
    if chi == 0:
        raise WitnessInputError("the empty graph is not inextensible for any colour set")
    return Witness(EMPTY, k, chi - 1)
