"""Constructive colouring pipelines behind the chromatic bounds.

Given a good template T = (S, c, F) with cost below 2k^2 and a partition of the
graph into few stable classes S_1..S_chi, these routines build a proper colouring
respecting T:

* :func:`extend_4k` works when |C| >= 4k-2 and chi <= |C|-2k+1;
* :func:`extend_316k` works when |C| >= ceil(49k/16)-1 and chi <= |C|-2k+2.

Every counting inequality the construction relies on is checked at runtime and
a failure raises :class:`~chiconn.errors.InvariantViolation` naming it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .coloring import chromatic_number, find_coloring, respects
from .errors import InvariantViolation, check
from .graph import Graph, induced_subgraph, vertex_connectivity_at_least
from .matching import distinct_representatives
from .sequences import check_critical, critical_sequence, partition_indices
from .template import EMPTY, Template
from .witness import Witness, minimal_inextensible_subgraph

log = logging.getLogger(__name__)


class HypothesisError(ValueError):
    """Inputs outside the range where a construction is guaranteed to work."""


def min_colors_316k(k: int) -> int:
    """ceil((3 + 1/16) k) - 1, in integers."""
    return -(-49 * k // 16) - 1


def chi_threshold(k: int, variant: str) -> int:
    if variant == "thm_main":
        return -(-49 * k // 16)
    if variant == "prop_4k":
        return 4 * k - 1
    raise HypothesisError(f"unknown variant {variant!r}")


@dataclass
class ClassState:
    """Bookkeeping for one stable class S_i (0-based ``index``)."""

    index: int
    members: tuple[int, ...]  # P_i = S_i minus S; a placeholder id if empty
    s_count: int  # |S cap S_i|
    weight: int
    p: int
    q: int = 0
    t: int = 0
    reduced: tuple[int, ...] = ()  # P_i'
    parts: list[tuple[int, ...]] = field(default_factory=list)  # P_i1..P_i(t_i+1)
    x: int = 0
    y: int = 0

    def snapshot(self) -> dict:
        return {
            "index": self.index, "P": list(self.members), "S_cap": self.s_count, "w": self.weight,
            "p": self.p, "q": self.q, "t": self.t, "P_reduced": list(self.reduced),
            "parts": [list(part) for part in self.parts], "x": self.x, "y": self.y,
        }


@dataclass
class ReductionState:
    """Mutable state of one pipeline run: classes, scalars, index sets, colouring."""

    g: Graph
    template: Template
    k: int
    ncolors: int
    classes: list[ClassState]
    class_of: dict[int, int]
    weight_of: dict[int, int]
    colour: dict[int, int]
    t: int = 0
    p: int = 0
    t_prime: int = 0
    q: int = 0
    s1: int = 0
    s2: int = 0
    d: int = 0
    d_prime: int = 0
    I0: list[int] = field(default_factory=list)
    I1: list[int] = field(default_factory=list)
    I2: list[int] = field(default_factory=list)
    J: list[int] = field(default_factory=list)
    I_prime: list[int] = field(default_factory=list)
    branch: str | None = None
    fallbacks: list[dict] = field(default_factory=list)
    checks: dict[str, int] = field(default_factory=dict)
    trace: list[dict] = field(default_factory=list)

    @property
    def chi(self) -> int:
        return len(self.classes)

    @property
    def I(self) -> list[int]:
        return sorted(self.I0 + self.I1)

    def w(self, vertices) -> int:
        return sum(self.weight_of[v] for v in vertices)

    def F(self, vertices) -> set[int]:
        out: set[int] = set()
        for v in vertices:
            if v < self.g.n:
                out |= self.template.F(v)
        return out

    def used(self) -> set[int]:
        return set(self.colour.values())

    def used_outside(self, i: int) -> set[int]:
        return {c for v, c in self.colour.items() if self.class_of[v] != i}

    def all_colours(self) -> set[int]:
        return set(range(1, self.ncolors + 1))

    def assert_(self, condition: bool, label: str, message: str) -> None:
        self.checks[label] = self.checks.get(label, 0) + 1
        check(condition, label, message, self)

    def snapshot(self, stage: str) -> None:
        self.trace.append({
            "stage": stage,
            "t": self.t, "p": self.p, "t_prime": self.t_prime, "q": self.q,
            "s1": self.s1, "s2": self.s2, "d": self.d, "d_prime": self.d_prime,
            "I0": list(self.I0), "I1": list(self.I1), "I2": list(self.I2),
            "J": list(self.J), "I_prime": list(self.I_prime), "branch": self.branch,
            "classes": [cl.snapshot() for cl in self.classes],
            "coloured": len(self.colour),
        })

    def __repr__(self) -> str:
        return f"ReductionState(k={self.k}, |C|={self.ncolors}, chi={self.chi}, trace={self.trace[-1:]})"


# --- helpers -----------------------------------------------------------------


def pigeonhole_assign(lists: Sequence[set[int]]) -> list[int]:
    """Colour sets from nonempty, not pairwise disjoint lists with < len(lists) colours.

    The first pair (lexicographic) of lists sharing a colour gets the least
    shared colour; every other set reuses the least already chosen colour it
    allows, or else takes its least colour.
    """
    pair = None
    for a in range(len(lists)):
        for b in range(a + 1, len(lists)):
            common = lists[a] & lists[b]
            if common:
                pair = (a, b, min(common))
                break
        if pair:
            break
    if pair is None:
        raise InvariantViolation("pigeonhole", "lists are pairwise disjoint")
    a, b, c = pair
    out = [0] * len(lists)
    out[a] = out[b] = c
    chosen = {c}
    for j, options in enumerate(lists):
        if j in (a, b):
            continue
        if not options:
            raise InvariantViolation("pigeonhole", f"list {j} is empty")
        reuse = options & chosen
        out[j] = min(reuse) if reuse else min(options)
        chosen.add(out[j])
    return out


def _greedy_distinct(
    state: ReductionState,
    items: Sequence[tuple[int, set[int]]],
    taken: set[int],
    stage: str,
) -> dict[int, int]:
    """Give each (key, list) a colour from its list, pairwise distinct and outside ``taken``.

    The greedy follows the order given. If it gets stuck, a bipartite matching
    is tried and any success is logged as a discrepancy (the greedy order is
    supposed to be enough).
    """
    used = set(taken)
    out: dict[int, int] = {}
    for key, options in items:
        free = options - used
        if not free:
            break
        out[key] = min(free)
        used.add(out[key])
    else:
        return out
    sdr = distinct_representatives([options for _, options in items], exclude=set(taken))
    if sdr is None:
        raise InvariantViolation(stage, "no system of distinct representatives exists", state)
    state.fallbacks.append({"stage": stage, "items": [key for key, _ in items]})
    log.warning("greedy colouring failed at %s but matching succeeded", stage)
    return {key: c for (key, _), c in zip(items, sdr)}


def _setup(g: Graph, t: Template, partition: Sequence[Sequence[int]], k: int, ncolors: int) -> ReductionState:
    if k < 1:
        raise HypothesisError("k must be positive")
    t.validate(g, ncolors)
    if t.max_forbidden() > k - 1:
        raise HypothesisError(f"template is not good: some |F(v)| = {t.max_forbidden()} > k-1")
    if t.cost(k) >= 2 * k * k:
        raise HypothesisError(f"template cost {t.cost(k)} is not below 2k^2 = {2 * k * k}")
    seen: list[int] = sorted(v for cls in partition for v in cls)
    if seen != list(range(g.n)):
        raise HypothesisError("partition must cover every vertex exactly once")
    for cls in partition:
        if not g.is_stable(cls):
            raise HypothesisError(f"class {sorted(cls)} is not stable")

    classes = []
    class_of: dict[int, int] = {}
    weight_of: dict[int, int] = {}
    for i, cls in enumerate(partition):
        for v in cls:
            class_of[v] = i
        members = tuple(sorted(v for v in cls if v not in t.colors))
        if not members:
            placeholder = g.n + i
            members = (placeholder,)
            class_of[placeholder] = i
        for v in members:
            weight_of[v] = len(t.F(v)) if v < g.n else 0
        w = sum(weight_of[v] for v in members)
        classes.append(ClassState(i, members, sum(1 for v in cls if v in t.colors), w, w // k))
    state = ReductionState(g, t, k, ncolors, classes, class_of, weight_of, dict(t.colors))
    state.t = 2 * k - len(t.colors)
    state.p = sum(cl.p for cl in classes)
    state.assert_(k * state.t > sum(cl.weight for cl in classes), "eq-chi6", "k t <= total class weight")
    state.assert_(state.p <= state.t - 1, "eq-chi7", f"p={state.p} > t-1={state.t - 1}")
    return state


# --- the reduction step --------------------------------------------------------


def _reduce_one(state: ReductionState, cl: ClassState) -> None:
    """Colour a heavy prefix P_i' of the class with at most q_i fresh colours."""
    k = state.k
    L = state.all_colours() - state.used()
    state.assert_(len(L) >= k, "lemma-4.5:pool", f"|L|={len(L)} < k")
    seq = critical_sequence(cl.members, state.weight_of, k)
    prof = check_critical(seq)
    landmarks, positions = prof.landmarks, prof.positions
    terms = list(seq.terms)  # current sequence Q^r, positions are 1-based below
    term_colour: dict[int, int] = {}
    for r in range(len(landmarks) - 1):
        a, b = positions[r], positions[r + 1]
        window = list(range(a, b + 1))
        lists = [L - state.F(terms[j - 1]) for j in window]
        state.assert_(all(lists), "claim-chi11:nonempty", "empty window list")
        state.assert_(sum(len(x) for x in lists) > len(L), "claim-chi11:overlap", "window lists too small")
        assigned = pigeonhole_assign(lists)
        distinct = len(set(assigned))
        gap = landmarks[r + 1] - landmarks[r]
        state.assert_(distinct <= b - a, "claim-chi11:count", f"{distinct} colours on {b - a + 1} sets")
        last = assigned[-1]
        if distinct <= gap or assigned.count(last) == 1:
            for j, c in zip(window[:-1], assigned[:-1]):
                term_colour[j] = c
        else:
            partner = next(j for j, c in zip(window[:-1], assigned[:-1]) if c == last)
            drop = next(j for j in window[:-1] if j != partner)
            for j, c in zip(window, assigned):
                if j != drop:
                    term_colour[j] = c
            # move the last term into the dropped slot; the dropped term goes last, uncoloured
            term_colour[drop] = term_colour.pop(b)
            terms[drop - 1], terms[b - 1] = terms[b - 1], terms[drop - 1]
        used_so_far = {term_colour[j] for j in range(1, b)}
        state.assert_(len(used_so_far) <= landmarks[r + 1], "claim-chi11:budget",
                      f"{len(used_so_far)} colours on the first {b - 1} terms, allowed {landmarks[r + 1]}")
    n_ell = positions[-1]
    cl.q = landmarks[-1]
    cl.t = cl.p - cl.q
    state.assert_(cl.t == seq.n - n_ell, "lemma-4.5:t", "t_i != n - n_ell")
    reduced = [v for j in range(1, n_ell) for v in terms[j - 1]]
    cl.reduced = tuple(sorted(reduced))
    cl.parts = [terms[j - 1] for j in range(n_ell, seq.n + 1)]
    state.assert_(state.w(cl.reduced) >= cl.q * k, "lemma-4.5:weight", "w(P_i') < q_i k")
    state.assert_(len(cl.parts) == cl.t + 1, "lemma-4.5:parts", "wrong number of remainder parts")
    state.assert_(all(state.w(part) < k for part in cl.parts), "lemma-4.5:part-weight", "part weight >= k")
    colours = {term_colour[j] for j in range(1, n_ell)}
    state.assert_(len(colours) <= cl.q, "lemma-4.5:colours", f"|c1(P_i')|={len(colours)} > q_i={cl.q}")
    state.assert_(colours <= L, "lemma-4.5:fresh", "P_i' colour not in L")
    for j in range(1, n_ell):
        for v in terms[j - 1]:
            state.assert_(term_colour[j] not in state.F([v]), "lemma-4.5:respect", f"vertex {v} gets a forbidden colour")
            state.colour[v] = term_colour[j]


def reduce_classes(g: Graph, t: Template, partition: Sequence[Sequence[int]], k: int, ncolors: int) -> ReductionState:
    """Reduce every class to a colourable heavy part plus t_i+1 light parts.

    Returns the state after colouring S and every P_i' (the colouring c1),
    with q_i, t_i, the remainder parts P_ij and x_i filled in.
    """
    if ncolors < 3 * k - 1:
        raise HypothesisError(f"need |C| >= 3k-1 = {3 * k - 1}")
    state = _setup(g, t, partition, k, ncolors)
    for cl in state.classes:
        _reduce_one(state, cl)
    state.q = sum(cl.q for cl in state.classes)
    s_size = len(t.colors)
    for cl in state.classes:
        outside = state.used_outside(cl.index)
        state.assert_(len(outside) <= s_size - cl.s_count + state.q - cl.q, "eq-chi1",
                      f"class {cl.index}: |c1(S1 - S_i)|={len(outside)}")
        x_weight = sum(state.w(part) for part in cl.parts)
        cl.x = x_weight - cl.t * k
        # x_i < 0 happens once w(P_i') - q_i k exceeds w(P_i) - p_i k, e.g. k=6 and
        # weights 3,4,4,4,5,5,5; only classes that end up in I need x_i >= 0
        state.assert_(-k < cl.x < k, "x-range", f"x_{cl.index}={cl.x} outside (-k, k)")
        state.assert_(cl.weight - cl.x >= cl.p * k, "x-slack", "w(P_i) - x_i < p_i k")
    state.t_prime = state.t - state.p
    state.assert_(state.t_prime >= 1, "t-prime", "t' < 1")
    state.assert_(k * state.t_prime > sum(cl.x for cl in state.classes), "eq-chi9", "k t' <= sum x_i")
    state.snapshot("reduce")
    return state


# --- extension with |C| >= 4k-2 -------------------------------------------------


def extend_4k(g: Graph, t: Template, partition: Sequence[Sequence[int]], k: int, ncolors: int,
              state_out: list | None = None) -> list[int]:
    """Respecting colouring when |C| >= 4k-2 and the partition has <= |C|-2k+1 classes."""
    if ncolors < 4 * k - 2:
        raise HypothesisError(f"need |C| >= 4k-2 = {4 * k - 2}, got {ncolors}")
    if len(partition) > ncolors - 2 * k + 1:
        raise HypothesisError(f"need chi <= |C|-2k+1 = {ncolors - 2 * k + 1}, got {len(partition)}")
    state = _setup(g, t, partition, k, ncolors)
    if state_out is not None:
        state_out.append(state)
    heavy = [cl for cl in state.classes if cl.p >= 1]
    light = [cl for cl in state.classes if cl.p == 0]
    state.I0 = [cl.index for cl in light]
    state.I1 = [cl.index for cl in heavy]
    base = set(t.colors.values())

    # heavy classes: p_i parts each of weight < 2k, all parts distinct colours
    items = []
    part_members = []
    for cl in heavy:
        weights = [state.weight_of[v] for v in cl.members]
        for part in partition_indices(weights, k, cl.p):
            vs = tuple(cl.members[i] for i in part)
            state.assert_(state.w(vs) < 2 * k, "lemma-4.3:part", "part weight >= 2k")
            pool = state.all_colours() - base - state.F(vs)
            state.assert_(len(pool) >= state.p, "lemma-4.2:pool", f"|L_ij|={len(pool)} < p={state.p}")
            items.append((len(part_members), pool))
            part_members.append(vs)
    for key, c in _greedy_distinct(state, items, set(), "lemma-4.2:heavy").items():
        for v in part_members[key]:
            state.colour[v] = c
    state.t_prime = state.t - state.p
    state.assert_(len(state.used()) <= 2 * k - state.t_prime, "lemma-4.2:used", "|c'(S')| > 2k - t'")

    # light classes: the heavy ones (w >= t') first by descending weight, then the rest
    taken = state.used()
    pools = {cl.index: state.all_colours() - taken - state.F(cl.members) for cl in light}
    first = sorted((cl for cl in light if cl.weight >= state.t_prime), key=lambda cl: (-cl.weight, cl.index))
    state.I_prime = [cl.index for cl in first]
    for pos, cl in enumerate(first, start=1):
        state.assert_(cl.weight + pos <= k + state.t_prime - 1, "lemma-4.2:x-plus-i", "x_i + i > k + t' - 1")
        state.assert_(len(pools[cl.index]) >= pos, "lemma-4.2:greedy", f"|L_i| < {pos}")
    rest = [cl for cl in light if cl.weight < state.t_prime]
    for cl in rest:
        state.assert_(len(pools[cl.index]) >= len(light), "lemma-4.2:rest", "|L_i| < |I_0|")
    order = [(cl.index, pools[cl.index]) for cl in first + rest]
    for i, c in _greedy_distinct(state, order, taken, "lemma-4.2:light").items():
        for v in state.classes[i].members:
            state.colour[v] = c
    state.snapshot("extend_4k")
    return _finish(state)


# --- extension with |C| >= ceil(49k/16)-1 --------------------------------------


def _claim13_bound(state: ReductionState, cl: ClassState) -> int:
    return cl.t * (state.ncolors - 3 * state.k + state.t_prime + state.s1 + cl.s_count + cl.q)


def _grow_I2(state: ReductionState) -> None:
    """Move classes violating the x_i lower bound into I2, colouring X_i with <= t_i colours.

    Runs to a fixpoint; s1 is recomputed after every move and classes are
    scanned in ascending index.
    """
    k = state.k
    state.I0 = [cl.index for cl in state.classes if cl.t == 0]
    state.I2 = []
    while True:
        state.I1 = [cl.index for cl in state.classes if cl.t > 0 and cl.index not in state.I2]
        state.s1 = sum(state.classes[i].t for i in state.I1)
        state.s2 = sum(state.classes[i].t for i in state.I2)
        mover = next((i for i in state.I1 if state.classes[i].x < _claim13_bound(state, state.classes[i])), None)
        if mover is None:
            return
        cl = state.classes[mover]
        L = state.all_colours() - state.used_outside(mover)
        bound = 2 * k - state.t_prime - state.s1 - cl.s_count - cl.q
        state.assert_(state.ncolors - len(L) <= bound, "eq-chi3", f"class {mover}: too many colours outside")
        lists = [L - state.F(part) for part in cl.parts]
        state.assert_(all(lists), "claim-chi13:nonempty", "empty part list")
        state.assert_(sum(len(x) for x in lists) > len(L), "claim-chi13:overlap", "part lists too small")
        assigned = pigeonhole_assign(lists)
        state.assert_(len(set(assigned)) <= cl.t, "claim-chi13:count", "more than t_i colours")
        for part, c in zip(cl.parts, assigned):
            for v in part:
                state.colour[v] = c
        state.I2.append(mover)


def _check_chi3(state: ReductionState) -> None:
    k = state.k
    for i in state.I:
        cl = state.classes[i]
        outside = len(state.used_outside(i))
        state.assert_(outside <= 2 * k - state.t_prime - state.s1 - cl.s_count - cl.q, "eq-chi3",
                      f"class {i}: |c2(S2 - S_i)|={outside}")
        state.assert_(cl.x >= _claim13_bound(state, cl), "claim-chi13", f"class {i}: x_i below bound")


def _colour_P3(state: ReductionState) -> None:
    """Colour the non-minimal remainder parts of I1 classes with s1 distinct colours."""
    k = state.k
    items = []
    owners = []
    for i in state.I1:
        cl = state.classes[i]
        outside = state.used_outside(i)
        for part in cl.parts[1:]:
            pool = state.all_colours() - outside - state.F(part)
            state.assert_(len(pool) >= state.s1, "claim-chi15:pool", f"|L_ij|={len(pool)} < s1={state.s1}")
            items.append((len(owners), pool))
            owners.append(part)
    state.assert_(len(items) == state.s1, "claim-chi15:count", "number of parts != s1")
    for key, c in _greedy_distinct(state, items, set(), "claim-chi15").items():
        for v in owners[key]:
            state.colour[v] = c
    for i in state.I:
        cl = state.classes[i]
        outside = len(state.used_outside(i))
        state.assert_(outside <= 2 * k - state.t_prime - cl.s_count - cl.p, "eq-chi4",
                      f"class {i}: |c3(S3 - S_i)|={outside}")


def _chi8_holds(k: int, t_prime: int, d: int, d_prime: int) -> bool:
    return (k - (t_prime + d_prime)) * (t_prime - d_prime) <= 2 * d * (t_prime + d_prime)


def extend_316k(g: Graph, t: Template, partition: Sequence[Sequence[int]], k: int, ncolors: int,
                state_out: list | None = None) -> list[int]:
    """Respecting colouring when |C| >= ceil(49k/16)-1 and the partition has <= |C|-2k+2 classes."""
    if ncolors < min_colors_316k(k):
        raise HypothesisError(f"need |C| >= ceil(49k/16)-1 = {min_colors_316k(k)}, got {ncolors}")
    if len(partition) > ncolors - 2 * k + 2:
        raise HypothesisError(f"need chi <= |C|-2k+2 = {ncolors - 2 * k + 2}, got {len(partition)}")
    state = reduce_classes(g, t, partition, k, ncolors)
    if state_out is not None:
        state_out.append(state)
    _grow_I2(state)
    state.assert_(state.s1 + state.s2 == state.p - state.q, "s1-plus-s2", "s1 + s2 != p - q")
    _check_chi3(state)
    for i in state.I:
        state.assert_(state.classes[i].x >= 0, "x-nonnegative", f"class {i} in I has x_i < 0")
    state.assert_(k * state.t_prime > sum(state.classes[i].x for i in state.I), "eq-chi9:I",
                  "k t' <= sum of x_i over I")
    state.snapshot("I2")

    # Y_i: a lightest remainder part, moved to the front
    for i in state.I:
        cl = state.classes[i]
        j = min(range(len(cl.parts)), key=lambda j: (state.w(cl.parts[j]), j))
        cl.parts.insert(0, cl.parts.pop(j))
        cl.y = state.w(cl.parts[0])
        if cl.t == 0:
            state.assert_(cl.y == cl.x, "y-equals-x", f"class {i}: y_i != x_i")
    _colour_P3(state)
    state.snapshot("P3")

    I = state.I
    lists = {i: state.all_colours() - state.used_outside(i) - state.F(state.classes[i].parts[0]) for i in I}
    limit = ncolors - 2 * k + 1
    if len(I) <= limit:
        state.J = list(I)
    else:
        spare = next((i for i in state.I0 if len(lists[i]) >= len(I)), None)
        state.assert_(spare is not None, "claim-chi16", "no class in I0 with |L_i| >= |I|")
        state.J = [i for i in I if i != spare]
    state.assert_(set(state.I1) <= set(state.J) and len(state.J) <= limit, "claim-chi16:J", "bad J")
    state.I_prime = [i for i in state.J if state.classes[i].x >= state.t_prime]
    state.assert_(set(state.I1) <= set(state.I_prime), "I1-in-I-prime", "some I1 class has x_i < t'")

    chosen = _claim17(state, lists)
    rest_J = [i for i in state.J if i not in state.I_prime]
    for i in rest_J:
        state.assert_(len(lists[i]) >= len(state.J), "claim-chi17:J-rest", f"class {i}: |L_i| < |J|")
    chosen.update(_greedy_distinct(state, [(i, lists[i]) for i in rest_J], set(chosen.values()), "J-rest"))
    outside_J = [i for i in I if i not in state.J]
    for i in outside_J:
        state.assert_(len(lists[i]) >= len(I), "claim-chi16:outside", f"class {i}: |L_i| < |I|")
    chosen.update(_greedy_distinct(state, [(i, lists[i]) for i in outside_J], set(chosen.values()), "I-minus-J"))
    for i, c in chosen.items():
        for v in state.classes[i].parts[0]:
            state.colour[v] = c
    state.snapshot("Y")
    return _finish(state)


def _claim17(state: ReductionState, lists: dict[int, set[int]]) -> dict[int, int]:
    """Distinct colours for {Y_i : i in I'} via the branch the parameters select."""
    k = state.k
    if not state.I_prime:
        state.branch = "empty"
        return {}
    state.d = state.ncolors - 3 * k + 1
    state.d_prime = state.d + state.s1 - 1
    d, dp, tp, s1 = state.d, state.d_prime, state.t_prime, state.s1
    state.assert_(16 * d >= k, "d-bound", f"d={d} < k/16")
    for i in state.I1:
        cl = state.classes[i]
        state.assert_(cl.x >= cl.t * (tp + dp), "claim-chi13:d-prime", f"class {i}: x_i < t_i (t'+d')")
    for i in state.I_prime:
        cl = state.classes[i]
        outside = len(state.used_outside(i))
        state.assert_(len(lists[i]) >= state.ncolors - outside - cl.y, "eq-chi2", f"class {i}: pool too small")
    order = sorted(state.I_prime, key=lambda i: (-state.classes[i].x, i))

    if tp <= dp:
        state.branch = "chi12"
        for pos, i in enumerate(order, start=1):
            cl = state.classes[i]
            state.assert_(cl.x >= (cl.t + 1) * tp, "claim-chi12:x", f"class {i}: x_i < (t_i+1) t'")
            state.assert_(cl.y + pos <= k + tp - 1, "claim-chi12:y-plus-i", f"class {i}: y_i + i > k + t' - 1")
            state.assert_(len(lists[i]) >= pos + d, "claim-chi12:pool", f"class {i}: |L_i| < i + d")
        return _greedy_distinct(state, [(i, lists[i]) for i in order], set(), "claim-chi12")

    s = s1 - 1
    state.assert_(tp >= s + 1 and tp >= len(state.I1), "claim-chi12:consequence", "t' < s+1 or t' < |I1|")
    if s * k <= d * k + s * (tp + dp):
        state.branch = "chi14"
        ones = [i for i in state.I_prime if i in state.I1]
        for i in ones:
            state.assert_(len(lists[i]) >= d + tp, "claim-chi14:I1-pool", f"class {i}: |L_i| < d + t'")
        chosen = _greedy_distinct(state, [(i, lists[i]) for i in ones], set(), "claim-chi14:I1")
        others = [i for i in order if i not in state.I1]
        for pos, i in enumerate(others, start=1):
            cl = state.classes[i]
            state.assert_(cl.y + pos <= k + tp - s1 + d - 1, "claim-chi14:y-plus-i", f"class {i}: y_i + i too big")
            state.assert_(len(lists[i]) >= pos + s1, "claim-chi14:pool", f"class {i}: |L_i| < i + s1")
        chosen.update(_greedy_distinct(state, [(i, lists[i]) for i in others], set(chosen.values()),
                                       "claim-chi14:rest"))
        return chosen

    state.branch = "chi8"
    state.assert_(s > d and Fraction(s) > d + Fraction(s * (tp + dp), k), "claim-chi14:consequence", "branch mismatch")
    state.assert_(_chi8_holds(k, tp, d, dp), "eq-chi8",
                  f"(k-(t'+d'))(t'-d') > 2d(t'+d') for k={k}, t'={tp}, d={d}, d'={dp}")
    for pos, i in enumerate(order, start=1):
        cl = state.classes[i]
        state.assert_(cl.y + pos <= k + tp + d - 1, "chi8:y-plus-i", f"class {i}: y_i + i > k + t' + d - 1")
        state.assert_(len(lists[i]) >= pos, "chi8:pool", f"class {i}: |L_i| < i")
    return _greedy_distinct(state, [(i, lists[i]) for i in order], set(), "chi8")


def _finish(state: ReductionState) -> list[int]:
    g = state.g
    missing = [v for v in range(g.n) if v not in state.colour]
    state.assert_(not missing, "complete", f"uncoloured vertices {missing}")
    f = [state.colour[v] for v in range(g.n)]
    state.assert_(respects(g, f, state.template, state.ncolors), "respects", "colouring does not respect T")
    return f


def colour_classes(g: Graph, budget: int | None = None) -> list[list[int]]:
    """The classes of an optimal colouring (chi(g) nonempty stable sets)."""
    chi = chromatic_number(g, budget)
    f = find_coloring(g, chi, budget)
    return [[v for v in range(g.n) if f[v] == c] for c in range(1, chi + 1)]


# --- end-to-end extraction -------------------------------------------------------


def extract_subgraph(g: Graph, k: int, variant: str = "thm_main", mode: str = "exact",
                     template_budget: int | None = None, node_budget: int | None = None) -> tuple[list[int], dict]:
    """A highly connected induced subgraph of large chromatic number, with a report.

    |C| is chi(g)-1, so the empty template witnesses C-inextensibility; the
    graph is shrunk to a minimally inextensible induced subgraph H, and H is
    checked by oracle to be (k+1)-connected with more than chi(g)-k vertices
    and chromatic number at least chi(g)-2k+2 (``thm_main``) or chi(g)-2k+1
    (``prop_4k``).
    """
    chi = chromatic_number(g, node_budget)
    need = chi_threshold(k, variant)
    if chi < need:
        raise HypothesisError(f"{variant} needs chi(g) >= {need}, got {chi}")
    ncolors = chi - 1
    result = minimal_inextensible_subgraph(g, k, ncolors, mode, EMPTY, template_budget, node_budget)
    h = induced_subgraph(g, result.vertices)
    chi_h = chromatic_number(h, node_budget)
    target = chi - 2 * k + (2 if variant == "thm_main" else 1)
    label = "theorem-1.2" if variant == "thm_main" else "proposition-4.4"
    assertions = {
        f"{label}:connectivity": vertex_connectivity_at_least(h, k + 1),
        f"{label}:size": h.n > chi - k,
        f"{label}:chromatic": chi_h >= target,
    }
    for name, ok in result.checks.items():
        assertions[name] = ok
    report = {
        "k": k,
        "variant": variant,
        "mode": mode,
        "chi": chi,
        "colors": ncolors,
        "vertices": result.vertices,
        "subgraph_chi": chi_h,
        "chi_target": target,
        "witness": result.witness.to_json(),
        "certified_minimal": result.certified,
        "assertions": assertions,
        "notes": result.notes,
        "status": "pass" if all(assertions.values()) else "fail",
    }
    return result.vertices, report


__all__ = [
    "ClassState",
    "HypothesisError",
    "ReductionState",
    "Witness",
    "chi_threshold",
    "colour_classes",
    "extend_316k",
    "extend_4k",
    "extract_subgraph",
    "min_colors_316k",
    "pigeonhole_assign",
    "reduce_classes",
]
