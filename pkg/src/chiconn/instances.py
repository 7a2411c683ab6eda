"""Seeded random inputs for the extension pipelines."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .coloring import chromatic_number
from .graph import Graph, random_graph
from .proof import colour_classes, min_colors_316k
from .template import Template


@dataclass(frozen=True)
class ExtensionInstance:
    g: Graph
    template: Template
    partition: list[list[int]]
    k: int
    ncolors: int
    seed: int


def random_good_template(g: Graph, k: int, ncolors: int, rng: random.Random) -> Template:
    """A good template (every |F(v)| <= k-1) with cost < 2k^2.

    S is a random vertex set of size <= 2k-1 coloured greedily with random
    admissible colours; the remaining cost budget is spread over random
    forbidden sets.
    """
    order = list(range(g.n))
    rng.shuffle(order)
    size = rng.randint(0, min(g.n, 2 * k - 1))
    colors: dict[int, int] = {}
    for v in order[:size]:
        taken = {colors[u] for u in g.neighbors(v) if u in colors}
        free = [c for c in range(1, ncolors + 1) if c not in taken]
        if free:
            colors[v] = rng.choice(free)
    budget = 2 * k * k - 1 - k * len(colors)
    forbidden: dict[int, frozenset[int]] = {}
    rest = [v for v in order if v not in colors]
    rng.shuffle(rest)
    for v in rest:
        size = min(rng.randint(0, k - 1), budget)
        if size <= 0:
            continue
        forbidden[v] = frozenset(rng.sample(range(1, ncolors + 1), size))
        budget -= size
    return Template(colors, forbidden)


def random_instance(seed: int, variant: str, n_max: int = 12, ks: tuple[int, ...] = (1, 2, 3)) -> ExtensionInstance:
    """One instance meeting the hypotheses of ``variant`` ("4k" or "316k")."""
    rng = random.Random(seed)
    k = rng.choice(ks)
    n = rng.randint(1, n_max)
    g = random_graph(n, rng.uniform(0.1, 0.8), rng.randrange(2**32))
    chi = chromatic_number(g)
    if variant == "4k":
        lower, slack = 4 * k - 2, 2 * k - 1
    elif variant == "316k":
        lower, slack = min_colors_316k(k), 2 * k - 2
    else:
        raise ValueError(f"unknown variant {variant!r}")
    ncolors = max(lower, chi + slack) + rng.choice((0, 0, 0, 1, 2))
    t = random_good_template(g, k, ncolors, rng)
    return ExtensionInstance(g, t, colour_classes(g), k, ncolors, seed)


def multipartite_instance(seed: int, ks: tuple[int, ...] = (16, 17, 18, 20, 24, 32),
                          full: bool = False) -> ExtensionInstance:
    """A complete multipartite graph whose parts carry heavy forbidden sets.

    Small graphs with k <= 3 rarely reach the later branches of the 316k
    pipeline; these instances use large k, the least admissible |C|, and
    near-maximal template cost. With ``full`` the partition has the largest
    size the hypotheses allow.
    """
    rng = random.Random(seed)
    k = rng.choice(ks)
    ncolors = min_colors_316k(k) + rng.choice((0, 0, 1))
    nclass = ncolors - 2 * k + 2 if full else rng.randint(2, ncolors - 2 * k + 2)
    members: list[list[int]] = [[] for _ in range(nclass)]
    colors: dict[int, int] = {}
    v = 0
    for j in range(rng.randint(0, 2 * k - 1)):
        members[rng.randrange(nclass)].append(v)
        colors[v] = j + 1
        v += 1
    budget = 2 * k * k - 1 - k * len(colors)
    forbidden: dict[int, frozenset[int]] = {}
    while budget > 0:
        size = min(budget, rng.choice((k - 1, k - 1, k - 2, rng.randint(1, k - 1))))
        members[rng.randrange(nclass)].append(v)
        forbidden[v] = frozenset(rng.sample(range(1, ncolors + 1), size))
        budget -= size
        v += 1
        if rng.random() < 0.03:
            break
    part_of = {u: i for i, group in enumerate(members) for u in group}
    edges = [(a, b) for a in range(v) for b in range(a + 1, v) if part_of[a] != part_of[b]]
    partition = [group for group in members if group]
    return ExtensionInstance(Graph.from_edges(v, edges), Template(colors, forbidden), partition, k, ncolors, seed)
