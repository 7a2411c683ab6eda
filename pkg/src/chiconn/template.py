"""Colour templates (S, c, F): precoloured vertices plus forbidden colour sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .graph import Graph


class TemplateError(ValueError):
    """A template that is not well formed for the given graph and colour set."""


@dataclass(frozen=True)
class Template:
    """A template on a graph with colours 1..|C|.

    ``colors`` is the precolouring c on S. ``forbidden`` stores F(v) for
    uncoloured vertices; vertices missing from it have F(v) empty, so F is
    total on V minus S.
    """

    colors: Mapping[int, int] = field(default_factory=dict)
    forbidden: Mapping[int, frozenset[int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        colors = {int(v): int(c) for v, c in sorted(self.colors.items())}
        forbidden = {
            int(v): frozenset(int(x) for x in fs)
            for v, fs in sorted(self.forbidden.items())
            if fs
        }
        overlap = set(colors) & set(forbidden)
        if overlap:
            raise TemplateError(f"vertices {sorted(overlap)} are both precoloured and have forbidden colours")
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "forbidden", forbidden)

    @property
    def S(self) -> list[int]:
        return list(self.colors)

    def F(self, v: int) -> frozenset[int]:
        return self.forbidden.get(v, frozenset())

    def weight(self, vertices: Iterable[int]) -> int:
        return sum(len(self.F(v)) for v in vertices)

    def cost(self, k: int) -> int:
        return k * len(self.colors) + sum(len(fs) for fs in self.forbidden.values())

    def max_forbidden(self) -> int:
        return max((len(fs) for fs in self.forbidden.values()), default=0)

    def used_colors(self) -> set[int]:
        out = set(self.colors.values())
        for fs in self.forbidden.values():
            out |= fs
        return out

    def restrict(self, vertices: Iterable[int]) -> Template:
        """T_A: keep precolouring and forbidden sets on A only (ids unchanged)."""
        keep = set(vertices)
        return Template(
            {v: c for v, c in self.colors.items() if v in keep},
            {v: fs for v, fs in self.forbidden.items() if v in keep},
        )

    def relabel(self, mapping: Mapping[int, int]) -> Template:
        """Rename vertices; vertices absent from ``mapping`` are dropped."""
        return Template(
            {mapping[v]: c for v, c in self.colors.items() if v in mapping},
            {mapping[v]: fs for v, fs in self.forbidden.items() if v in mapping},
        )

    def validate(self, g: Graph, ncolors: int) -> None:
        for v, c in self.colors.items():
            if not 0 <= v < g.n:
                raise TemplateError(f"precoloured vertex {v} not in graph")
            if not 1 <= c <= ncolors:
                raise TemplateError(f"vertex {v} precoloured with {c}, outside 1..{ncolors}")
        for v, fs in self.forbidden.items():
            if not 0 <= v < g.n:
                raise TemplateError(f"vertex {v} with forbidden colours not in graph")
            bad = [c for c in fs if not 1 <= c <= ncolors]
            if bad:
                raise TemplateError(f"vertex {v} forbids colours {sorted(bad)} outside 1..{ncolors}")
        for u, cu in self.colors.items():
            for v, cv in self.colors.items():
                if u < v and cu == cv and g.has_edge(u, v):
                    raise TemplateError(f"adjacent precoloured vertices {u} and {v} share colour {cu}")

    def to_json(self) -> dict:
        return {
            "S": list(self.colors),
            "c": list(self.colors.values()),
            "F": {str(v): sorted(fs) for v, fs in self.forbidden.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Template:
        if not isinstance(data, Mapping):
            raise TemplateError("template JSON must be an object")
        unknown = set(data) - {"S", "c", "F"}
        if unknown:
            raise TemplateError(f"unknown template keys {sorted(unknown)}")
        s = data.get("S", [])
        c = data.get("c", [])
        f = data.get("F", {})
        if not isinstance(s, list) or not isinstance(c, list) or len(s) != len(c):
            raise TemplateError("'S' and 'c' must be lists of equal length")
        if len(set(s)) != len(s):
            raise TemplateError("'S' lists a vertex twice")
        if not isinstance(f, Mapping):
            raise TemplateError("'F' must map vertices to colour lists")
        try:
            colors = {int(v): int(col) for v, col in zip(s, c)}
            forbidden = {int(v): frozenset(int(x) for x in fs) for v, fs in f.items()}
        except (TypeError, ValueError) as exc:
            raise TemplateError(f"non-integer entry in template: {exc}") from None
        return cls(colors, forbidden)


EMPTY = Template()


def k_cost(t: Template, k: int) -> int:
    """k|S| + sum of |F(v)| over uncoloured v."""
    return t.cost(k)
