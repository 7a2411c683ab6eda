"""Exhaustive catalogs of non-isomorphic graphs on few vertices.

Graphs on n vertices are produced from the catalog on n-1 vertices by adding a
vertex with every possible neighbourhood; every graph arises this way (delete
its last vertex). Duplicates are removed by bucketing on a colour-refinement
invariant and running an exact isomorphism test inside each bucket. Each class
is represented by the first member generated, so output order is deterministic.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .formats import to_graph6
from .graph import Graph, bits, is_connected

# Known counts of non-isomorphic graphs (OEIS A000088) for n = 0..10.
GRAPH_COUNTS = (1, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668, 12005168)


_SMALL = 1 << 10
_BIT_LISTS = [tuple(bits(m)) for m in range(_SMALL)]


def _members(mask: int) -> tuple[int, ...]:
    return _BIT_LISTS[mask] if mask < _SMALL else tuple(bits(mask))


def refined_colors(adj: tuple[int, ...], rounds: int = 3) -> list[int]:
    """Iterated degree refinement; colours are hashes, so they are label free."""
    n = len(adj)
    colors = [a.bit_count() for a in adj]
    nbrs = [_members(a) for a in adj]
    for _ in range(rounds):
        new = [hash((colors[v], tuple(sorted([colors[u] for u in nbrs[v]])))) for v in range(n)]
        if len(set(new)) == len(set(colors)):
            colors = new
            break
        colors = new
    return colors


def _invariant(adj: tuple[int, ...], colors: list[int]) -> tuple:
    triangles = [sum([(adj[u] & a).bit_count() for u in _members(a)]) for a in adj]
    return tuple(sorted(zip(colors, triangles)))


def _isomorphic(a: tuple[int, ...], ca: list[int], b: tuple[int, ...], cb: list[int]) -> bool:
    n = len(a)
    order = sorted(range(n), key=lambda v: (ca.count(ca[v]), ca[v], v))
    candidates = {c: [u for u in range(n) if cb[u] == c] for c in set(ca)}
    image = [-1] * n
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        v = order[i]
        for u in candidates[ca[v]]:
            if used >> u & 1:
                continue
            ok = True
            for j in range(i):
                w = order[j]
                if (a[v] >> w & 1) != (b[u] >> image[w] & 1):
                    ok = False
                    break
            if ok:
                image[v] = u
                used |= 1 << u
                if extend(i + 1):
                    return True
                used &= ~(1 << u)
        image[v] = -1
        return False

    return extend(0)


@lru_cache(maxsize=None)
def _level(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    reps: list[tuple[int, ...]] = []
    buckets: dict[tuple, list[tuple[tuple[int, ...], list[int]]]] = {}
    for parent in _level(n - 1):
        for nb in range(1 << (n - 1)):
            adj = tuple(parent[v] | ((nb >> v & 1) << (n - 1)) for v in range(n - 1)) + (nb,)
            colors = refined_colors(adj)
            key = _invariant(adj, colors)
            bucket = buckets.setdefault(key, [])
            if any(_isomorphic(adj, colors, other, oc) for other, oc in bucket):
                continue
            bucket.append((adj, colors))
            reps.append(adj)
    return tuple(reps)


def graphs_on(n: int, connected: bool = False) -> list[Graph]:
    """All graphs on ``n`` vertices up to isomorphism."""
    out = [Graph(n, adj) for adj in _level(n)]
    if connected:
        out = [g for g in out if is_connected(g)]
    return out


def catalog(n_max: int, connected: bool = False, n_min: int = 0) -> Iterator[Graph]:
    for n in range(n_min, n_max + 1):
        yield from graphs_on(n, connected)


def catalog_key(g: Graph) -> tuple[int, str]:
    return g.n, to_graph6(g)
