"""Exact colouring search: chromatic number, plain and template-respecting colourings.

Colourings are lists indexed by vertex holding colours 1..|C|.
"""

from __future__ import annotations

import os

from .graph import Graph, bits
from .template import Template, TemplateError

DEFAULT_NODE_BUDGET = int(os.environ.get("CHICONN_NODE_BUDGET", "5000000"))


class BudgetExhausted(RuntimeError):
    """A search hit its node budget before deciding; the answer is unknown."""

    def __init__(self, what: str, budget: int):
        super().__init__(f"{what}: budget of {budget} exhausted")
        self.what = what
        self.budget = budget


def greedy_clique(g: Graph) -> list[int]:
    """A maximal clique grown from the highest-degree vertex (ties: lowest index)."""
    if g.n == 0:
        return []
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    clique = [order[0]]
    common = g.adj[order[0]]
    for v in order[1:]:
        if common >> v & 1:
            clique.append(v)
            common &= g.adj[v]
    return sorted(clique)


def dsatur_greedy(g: Graph) -> list[int]:
    """DSatur heuristic colouring (max saturation, then degree, then index)."""
    color = [0] * g.n
    seen = [0] * g.n  # bitmask of neighbour colours
    for _ in range(g.n):
        v = max(
            (u for u in range(g.n) if not color[u]),
            key=lambda u: (seen[u].bit_count(), g.degree(u), -u),
        )
        c = 1
        while seen[v] >> c & 1:
            c += 1
        color[v] = c
        for u in bits(g.adj[v]):
            seen[u] |= 1 << c
    return color


class _Search:
    """Backtracking over per-vertex colour domains (bitmasks, bit c = colour c).

    The next vertex is the uncoloured one with fewest remaining colours, ties by
    index. After each assignment, a neighbour left with no colour triggers an
    immediate backtrack. Colours in ``interchangeable`` are symmetric in the
    instance, so only the least not yet used one is ever tried.
    """

    def __init__(self, g: Graph, domains: list[int], interchangeable: int, budget: int, what: str):
        self.g = g
        self.avail = list(domains)
        self.interchangeable = interchangeable
        self.budget = budget
        self.what = what
        self.nodes = 0
        self.color = [0] * g.n
        self.use = {}

    def run(self) -> list[int] | None:
        if any(a == 0 for a in self.avail):
            return None
        if self._rec((1 << self.g.n) - 1):
            return list(self.color)
        return None

    def _rec(self, todo: int) -> bool:
        if not todo:
            return True
        avail = self.avail
        best, best_size = -1, 1 << 30
        for v in bits(todo):
            size = avail[v].bit_count()
            if size < best_size:
                best, best_size = v, size
                if size == 1:
                    break
        v = best
        cand = avail[v]
        free = cand & self.interchangeable
        if free:
            unused = free & ~self._used_mask()
            if unused:
                cand = (cand & ~unused) | (unused & -unused)
        rest = todo & ~(1 << v)
        nbrs = self.g.adj[v] & rest
        for c in bits(cand):
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExhausted(self.what, self.budget)
            bit = 1 << c
            touched = []
            dead = False
            for u in bits(nbrs):
                if avail[u] & bit:
                    avail[u] ^= bit
                    touched.append(u)
                    if not avail[u]:
                        dead = True
                        break
            if not dead:
                self.color[v] = c
                self.use[c] = self.use.get(c, 0) + 1
                if self._rec(rest):
                    return True
                self.use[c] -= 1
                self.color[v] = 0
            for u in touched:
                avail[u] |= bit
        return False

    def _used_mask(self) -> int:
        m = 0
        for c, count in self.use.items():
            if count:
                m |= 1 << c
        return m


def _all_colors(ncolors: int) -> int:
    return ((1 << (ncolors + 1)) - 1) & ~1


def find_coloring(g: Graph, ncolors: int, budget: int | None = None) -> list[int] | None:
    """A proper colouring with colours 1..ncolors, or None if none exists.

    The colours of a greedily found maximal clique are fixed to 1..|K|; the
    remaining colours are interchangeable.
    """
    budget = DEFAULT_NODE_BUDGET if budget is None else budget
    if g.n == 0:
        return []
    clique = greedy_clique(g)
    if len(clique) > ncolors:
        return None
    full = _all_colors(ncolors)
    domains = [full] * g.n
    for i, v in enumerate(clique, start=1):
        domains[v] = 1 << i
    interchangeable = full & ~_all_colors(len(clique))
    return _Search(g, domains, interchangeable, budget, f"{ncolors}-colouring").run()


def chromatic_number(g: Graph, budget: int | None = None) -> int:
    """Exact chromatic number (0 for the empty graph)."""
    if g.n == 0:
        return 0
    lower = len(greedy_clique(g))
    upper = max(dsatur_greedy(g))
    for m in range(lower, upper):
        if find_coloring(g, m, budget) is not None:
            return m
    return upper


def find_respecting_coloring(g: Graph, t: Template, ncolors: int, budget: int | None = None) -> list[int] | None:
    """A proper colouring agreeing with c on S and avoiding F(v) elsewhere."""
    t.validate(g, ncolors)
    budget = DEFAULT_NODE_BUDGET if budget is None else budget
    full = _all_colors(ncolors)
    domains = []
    for v in range(g.n):
        c = t.colors.get(v)
        if c is not None:
            domains.append(1 << c)
        else:
            dom = full
            for x in t.F(v):
                dom &= ~(1 << x)
            domains.append(dom)
    mentioned = 0
    for c in t.used_colors():
        mentioned |= 1 << c
    return _Search(g, domains, full & ~mentioned, budget, "respecting colouring").run()


def is_proper(g: Graph, f: list[int], ncolors: int | None = None) -> bool:
    if len(f) != g.n:
        return False
    if ncolors is not None and any(not 1 <= c <= ncolors for c in f):
        return False
    return all(f[u] != f[v] for u, v in g.edges())


def respects(g: Graph, f: list[int], t: Template, ncolors: int) -> bool:
    """Independent check that ``f`` is proper and respects ``t``."""
    if not is_proper(g, f, ncolors):
        return False
    if any(f[v] != c for v, c in t.colors.items()):
        return False
    return all(f[v] not in fs for v, fs in t.forbidden.items())


__all__ = [
    "BudgetExhausted",
    "TemplateError",
    "chromatic_number",
    "dsatur_greedy",
    "find_coloring",
    "find_respecting_coloring",
    "greedy_clique",
    "is_proper",
    "respects",
]
