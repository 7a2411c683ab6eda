"""Weighted stable classes, bounded partitions, fit and critical sequences.

A class P is a set of uncoloured vertices with weight w(v) = |F(v)|. A fit
sequence splits P into ordered nonempty terms of weight in [0, k). Term j is a
*jump* when floor(w_j / k) exceeds floor(w_{j-1} / k), where w_j is the
cumulative weight of the first j terms; otherwise it is a non-jump and the
common floor value is a *landmark*.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import InvariantViolation, check


class SequenceInputError(ValueError):
    pass


def partition_indices(values: Sequence[int], k: int, q: int) -> list[list[int]]:
    """Split indices of ``values`` into ``q`` groups, each of value sum < 2k.

    Requires 0 <= a <= k for every value and qk <= sum < (q+1)k. Recursion:
    take the shortest prefix R of the values in descending order with sum
    >= (q-1)k (so sum(R) < qk), split R into q-1 groups, and the rest forms
    the last group, whose sum is < (q+1)k - (q-1)k = 2k.
    """
    if k < 1 or q < 1:
        raise SequenceInputError("k and q must be positive")
    if any(not 0 <= a <= k for a in values):
        raise SequenceInputError(f"values must lie in [0, {k}]")
    total = sum(values)
    if not q * k <= total < (q + 1) * k:
        raise SequenceInputError(f"need {q * k} <= sum < {(q + 1) * k}, got {total}")
    return _split(list(range(len(values))), values, k, q)


def _split(idx: list[int], values: Sequence[int], k: int, q: int) -> list[list[int]]:
    if q == 1:
        return [sorted(idx)]
    order = sorted(idx, key=lambda i: (-values[i], i))
    acc = 0
    cut = 0
    while acc < (q - 1) * k:
        acc += values[order[cut]]
        cut += 1
    rest = sorted(order[cut:])
    check(acc < q * k, "lemma-4.3:prefix", f"prefix sum {acc} >= {q * k}")
    check(sum(values[i] for i in rest) < 2 * k, "lemma-4.3:last-part", "last part too heavy")
    return _split(order[:cut], values, k, q - 1) + [rest]


def partition_bounded(values: Sequence[int], k: int, q: int) -> list[list[int]]:
    """Partition the multiset ``values`` into ``q`` parts each summing to < 2k."""
    return [[values[i] for i in part] for part in partition_indices(values, k, q)]


@dataclass(frozen=True)
class FitSequence:
    terms: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        check(len(self.terms) == len(self.weights), "fit", "terms and weights differ in length")
        for term, w in zip(self.terms, self.weights):
            check(bool(term), "fit", "empty term")
            check(0 <= w < self.k, "fit", f"term {term} has weight {w} outside [0, {self.k})")

    @classmethod
    def build(cls, terms: Sequence[Sequence[int]], weight: Mapping[int, int], k: int) -> FitSequence:
        terms = tuple(tuple(sorted(t)) for t in terms)
        return cls(terms, tuple(sum(weight[v] for v in t) for t in terms), k)

    @property
    def n(self) -> int:
        return len(self.terms)

    @property
    def total(self) -> int:
        return sum(self.weights)

    def cumulative(self) -> list[int]:
        out, acc = [], 0
        for w in self.weights:
            acc += w
            out.append(acc)
        return out

    def members(self) -> set[int]:
        return {v for t in self.terms for v in t}

    def is_increasing(self) -> bool:
        return all(a <= b for a, b in zip(self.weights, self.weights[1:]))

    def is_critical(self) -> bool:
        tags = jump_profile(self).jumps
        return not any(not a and not b for a, b in zip(tags, tags[1:]))


@dataclass(frozen=True)
class JumpProfile:
    jumps: tuple[bool, ...]  # per term: True = jump
    landmarks: tuple[int, ...]
    positions: tuple[int, ...]  # 1-based n_r = q_r + r

    @property
    def ell(self) -> int:
        return len(self.landmarks)

    @property
    def jump_count(self) -> int:
        return sum(self.jumps)


def jump_profile(seq: FitSequence) -> JumpProfile:
    k = seq.k
    tags = []
    landmarks: list[int] = []
    prev = 0
    for w in seq.cumulative():
        jump = w // k != prev // k
        tags.append(jump)
        if not jump and (not landmarks or landmarks[-1] != w // k):
            landmarks.append(w // k)
        prev = w
    floor_total = seq.total // k
    check(not tags or not tags[0], "fit:first-nonjump", "first term is a jump")
    check(sum(tags) == floor_total, "fit:jump-count", f"{sum(tags)} jumps, expected {floor_total}")
    check(all(q <= floor_total for q in landmarks), "fit:landmark-bound", "landmark above floor(w/k)")
    positions = tuple(q + r for r, q in enumerate(landmarks, start=1))
    return JumpProfile(tuple(tags), tuple(landmarks), positions)


def fit_singletons(members: Sequence[int], weight: Mapping[int, int], k: int) -> FitSequence:
    """Singleton terms in ascending vertex order."""
    if not members:
        raise SequenceInputError("class must be nonempty")
    heavy = [v for v in members if weight[v] >= k]
    if heavy:
        raise SequenceInputError(f"vertices {heavy} have weight >= k; template is not good")
    return FitSequence.build([[v] for v in sorted(members)], weight, k)


def _sorted_terms(terms: list[tuple[int, ...]], weight: Mapping[int, int]) -> list[tuple[int, ...]]:
    return sorted(terms, key=lambda t: sum(weight[v] for v in t))


def critical_sequence(members: Sequence[int], weight: Mapping[int, int], k: int) -> FitSequence:
    """An increasing critical sequence of the class.

    Start from singletons sorted by weight; while two consecutive non-jumps
    exist, merge the leftmost such pair and re-sort (stable). Each merge removes
    one term, and a merged pair stays below weight k because both members sit
    inside one window [qk, (q+1)k).
    """
    seq = fit_singletons(members, weight, k)
    terms = _sorted_terms(list(seq.terms), weight)
    while True:
        seq = FitSequence.build(terms, weight, k)
        tags = jump_profile(seq).jumps
        pair = next((j for j in range(len(tags) - 1) if not tags[j] and not tags[j + 1]), None)
        if pair is None:
            return seq
        merged = tuple(sorted(terms[pair] + terms[pair + 1]))
        terms = _sorted_terms(terms[:pair] + [merged] + terms[pair + 2:], weight)


def check_critical(seq: FitSequence) -> JumpProfile:
    """Assert the structural identities of a critical sequence; return its profile."""
    k = seq.k
    prof = jump_profile(seq)
    floor_total = seq.total // k
    cum = seq.cumulative()
    state = {"terms": seq.terms, "weights": seq.weights, "k": k}
    check(seq.is_critical(), "critical", "two consecutive non-jumps", state)
    check(prof.ell == seq.n - floor_total, "critical:ell", f"ell={prof.ell}, n={seq.n}, floor={floor_total}", state)
    check(list(prof.landmarks) == sorted(set(prof.landmarks)), "critical:landmarks", "landmarks not increasing", state)
    for q, pos in zip(prof.landmarks, prof.positions):
        check(not prof.jumps[pos - 1], "critical:position", f"term {pos} should be a non-jump", state)
        check(q * k <= cum[pos - 1] < (q + 1) * k, "critical:window", f"w_{pos} outside [{q}k, {q + 1}k)", state)
    after = sum(prof.jumps[prof.positions[-1]:])
    check(after == floor_total - prof.landmarks[-1], "critical:tail-jumps", f"{after} jumps after n_ell", state)
    return prof


__all__ = [
    "FitSequence",
    "InvariantViolation",
    "JumpProfile",
    "SequenceInputError",
    "check_critical",
    "critical_sequence",
    "fit_singletons",
    "jump_profile",
    "partition_bounded",
    "partition_indices",
]
