"""Simple undirected graphs on vertices 0..n-1, stored as adjacency bitmasks."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator


class GraphInputError(ValueError):
    """Raised for malformed graph input (bad vertex ids, bad parameters)."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """An immutable simple graph.

    ``adj[v]`` is the bitmask of neighbours of ``v``. ``origin`` maps vertex ids
    back to the ambient graph when the graph was produced by
    :func:`induced_subgraph`; it does not take part in equality.
    """

    n: int
    adj: tuple[int, ...]
    origin: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphInputError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphInputError(f"vertex {v} has a neighbour out of range")
            if nb >> v & 1:
                raise GraphInputError(f"loop at vertex {v}")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise GraphInputError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 0:
            raise GraphInputError("vertex count must be nonnegative")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphInputError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, leaves: int) -> Graph:
        """Star with center 0 and leaves 1..leaves."""
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def wheel(cls, rim: int) -> Graph:
        """Hub 0 joined to a cycle on 1..rim."""
        edges = [(0, i) for i in range(1, rim + 1)]
        edges += [(i, i % rim + 1) for i in range(1, rim + 1)]
        return cls.from_edges(rim + 1, edges)

    @classmethod
    def petersen(cls) -> Graph:
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def is_stable(self, vertices: Iterable[int]) -> bool:
        m = mask_of(vertices)
        return all(not (self.adj[v] & m) for v in bits(m))

    def complement(self) -> Graph:
        full = self.full_mask
        return Graph(self.n, tuple(full ^ a ^ (1 << v) for v, a in enumerate(self.adj)))

    def to_original(self, vertices: Iterable[int]) -> list[int]:
        if self.origin is None:
            return sorted(vertices)
        return sorted(self.origin[v] for v in vertices)


def popcount(m: int) -> int:
    return m.bit_count()


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """Return ``g[s]`` relabelled to 0..|s|-1 in ascending order of ``s``.

    The result's ``origin`` gives the original id of each new vertex.
    """
    verts = sorted(set(s))
    for v in verts:
        if not 0 <= v < g.n:
            raise GraphInputError(f"vertex {v} not in graph with {g.n} vertices")
    index = {v: i for i, v in enumerate(verts)}
    adj = []
    for v in verts:
        row = 0
        for u in bits(g.adj[v]):
            j = index.get(u)
            if j is not None:
                row |= 1 << j
        adj.append(row)
    base = g.origin
    origin = tuple(verts) if base is None else tuple(base[v] for v in verts)
    return Graph(len(verts), tuple(adj), origin)


def component_of(adj: dict[int, int] | tuple[int, ...], start: int, mask: int) -> int:
    """Bitmask of the component of ``start`` inside the vertex set ``mask``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def is_connected_mask(g: Graph, mask: int) -> bool:
    if mask == 0:
        return True
    start = (mask & -mask).bit_length() - 1
    return component_of(g.adj, start, mask) == mask


def is_connected(g: Graph) -> bool:
    return is_connected_mask(g, g.full_mask)


def local_connectivity(g: Graph, s: int, t: int, cap: int | None = None, within: int | None = None) -> int:
    """Maximum number of internally vertex-disjoint s-t paths (s, t nonadjacent).

    Unit-capacity augmenting paths on the vertex-split digraph: each vertex v
    becomes v_in -> v_out with capacity 1; each edge uv becomes u_out -> v_in and
    v_out -> u_in. Stops early once ``cap`` paths are found. ``within``
    restricts the search to a vertex subset.
    """
    mask = g.full_mask if within is None else within
    # flow[(a, b)] = 1 when one unit is routed along arc a -> b.
    # Nodes: (v, 0) = v_in, (v, 1) = v_out.
    flow: dict[tuple[tuple[int, int], tuple[int, int]], int] = {}

    def residual(a: tuple[int, int], b: tuple[int, int], capacity: int) -> int:
        return capacity - flow.get((a, b), 0) + flow.get((b, a), 0)

    source, sink = (s, 1), (t, 0)
    count = 0
    while cap is None or count < cap:
        parent: dict[tuple[int, int], tuple[int, int] | None] = {source: None}
        queue = deque([source])
        found = False
        while queue and not found:
            node = queue.popleft()
            v, side = node
            succ: list[tuple[tuple[int, int], int]] = []
            if side == 0:
                succ.append(((v, 1), 1))
                # backwards over edges that carry flow into v_in
                for u in bits(g.adj[v] & mask):
                    if flow.get(((u, 1), node), 0):
                        succ.append(((u, 1), 0))
            else:
                for u in bits(g.adj[v] & mask):
                    succ.append(((u, 0), 1))
                if flow.get(((v, 0), node), 0):
                    succ.append(((v, 0), 0))
            for nxt, capacity in succ:
                if nxt in parent or residual(node, nxt, capacity) <= 0:
                    continue
                parent[nxt] = node
                if nxt == sink:
                    found = True
                    break
                queue.append(nxt)
        if not found:
            break
        node = sink
        while parent[node] is not None:
            prev = parent[node]
            if flow.get((node, prev), 0):
                flow[(node, prev)] -= 1
            else:
                flow[(prev, node)] = flow.get((prev, node), 0) + 1
            node = prev
        count += 1
    return count


def vertex_connectivity_at_least(g: Graph, kappa: int) -> bool:
    """True iff ``g`` has more than ``kappa`` vertices and no cutset of size < ``kappa``."""
    if g.n <= kappa:
        return False
    if kappa <= 0:
        return True
    if min(popcount(a) for a in g.adj) < kappa:
        return False
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not g.has_edge(u, v) and local_connectivity(g, u, v, cap=kappa) < kappa:
                return False
    return True


def find_cutset(g: Graph, max_size: int) -> tuple[list[int], list[int], list[int]] | None:
    """Smallest cutset of size <= ``max_size``, as ``(X, A, B)``.

    Among cutsets of minimum size the lexicographically least sorted vertex
    list is chosen; ``A`` is the component of ``g - X`` holding its least
    vertex and ``B`` is everything else.
    """
    if max_size < 0:
        return None
    full = g.full_mask
    for size in range(0, min(max_size, g.n - 2) + 1):
        for xs in combinations(range(g.n), size):
            rest = full & ~mask_of(xs)
            start = (rest & -rest).bit_length() - 1
            comp = component_of(g.adj, start, rest)
            if comp != rest:
                return list(xs), list(bits(comp)), list(bits(rest & ~comp))
    return None


def random_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p) sample.

    Pairs (i, j), i < j, are visited in lexicographic order; each draws one
    ``random.Random(seed).random()`` value and becomes an edge iff it is < p.
    Python's Mersenne Twister stream for an integer seed is platform stable.
    """
    if n < 0:
        raise GraphInputError("vertex count must be nonnegative")
    if not 0.0 <= p <= 1.0:
        raise GraphInputError(f"edge probability {p} outside [0, 1]")
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)
