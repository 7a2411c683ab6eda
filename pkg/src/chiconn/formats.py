"""graph6 and plain edge-list encodings."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .graph import Graph, GraphInputError

G6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def _decode_n(data: str) -> tuple[int, str]:
    if not data:
        raise GraphInputError("empty graph6 string")
    if data[0] != "~":
        return ord(data[0]) - 63, data[1:]
    if len(data) > 1 and data[1] == "~":
        chunk, rest = data[2:8], data[8:]
    else:
        chunk, rest = data[1:4], data[4:]
    n = 0
    for ch in chunk:
        n = (n << 6) | (ord(ch) - 63)
    return n, rest


def to_graph6(g: Graph) -> str:
    """graph6 string (no header, no newline).

    Bits are the upper triangle in column order: (0,1), (0,2), (1,2), (0,3), ...
    packed six to a byte, big-endian within each six, zero-padded.
    """
    out = [_encode_n(g.n)]
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = (acc << 1) | (g.adj[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(G6_HEADER):
        data = data[len(G6_HEADER):]
    n, body = _decode_n(data)
    needed = (n * (n - 1) // 2 + 5) // 6
    if len(body) != needed:
        raise GraphInputError(f"graph6 body has {len(body)} bytes, expected {needed} for n={n}")
    for ch in body:
        if not 63 <= ord(ch) <= 126:
            raise GraphInputError(f"invalid graph6 character {ch!r}")
    stream = "".join(format(ord(ch) - 63, "06b") for ch in body)
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if stream[pos] == "1":
                edges.append((i, j))
            pos += 1
    if "1" in stream[pos:]:
        raise GraphInputError("nonzero padding bits in graph6 string")
    return Graph.from_edges(n, edges)


def to_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphInputError("edge list must start with an 'n m' header")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphInputError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise GraphInputError(f"header announces {m} edges, found {len(edges)}")
    g = Graph.from_edges(n, edges)
    if g.edge_count() != m:
        raise GraphInputError("edge list contains repeated edges")
    return g


def _looks_like_edge_list(text: str) -> bool:
    first = next((line for line in text.splitlines() if line.strip()), "")
    parts = first.split()
    return len(parts) == 2 and all(p.lstrip("-").isdigit() for p in parts)


def parse_graphs(text: str) -> list[Graph]:
    """Parse one edge list, or any number of graph6 lines."""
    if _looks_like_edge_list(text):
        return [from_edge_list(text)]
    return [from_graph6(line) for line in text.splitlines() if line.strip()]


def read_graphs(path: str | Path) -> list[Graph]:
    return parse_graphs(Path(path).read_text(encoding="ascii"))


def write_graph6(graphs: Iterable[Graph], path: str | Path) -> None:
    Path(path).write_text("".join(to_graph6(g) + "\n" for g in graphs), encoding="ascii")
