"""Systems of distinct representatives via bipartite matching."""

from __future__ import annotations

from typing import Sequence

import networkx as nx
from networkx.algorithms import bipartite


def distinct_representatives(lists: Sequence[set[int]], exclude: set[int] = frozenset()) -> list[int] | None:
    """Pick pairwise distinct colours, one from each list and none from ``exclude``.

    Returns None when Hall's condition fails.
    """
    if not lists:
        return []
    g = nx.Graph()
    left = [("set", i) for i in range(len(lists))]
    g.add_nodes_from(left, bipartite=0)
    for i, options in enumerate(lists):
        for c in sorted(options):
            if c not in exclude:
                g.add_edge(("set", i), ("col", c))
    matching = bipartite.hopcroft_karp_matching(g, top_nodes=left)
    if any(node not in matching for node in left):
        return None
    return [matching[("set", i)][1] for i in range(len(lists))]
