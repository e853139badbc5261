"""Desk-scale ground truth.

Exhaustive enumeration of loser assignments, the exact set of achievable
losing-score lists, seeded random hypertournament generation, and a
cross-validation report comparing the decision procedures against the
enumerated truth. Enumeration ranges over loser choices only: scores depend
only on the last position of each arc, so nothing is lost while the space
shrinks from orderings to one choice per selection.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate, combinations_with_replacement, product
from typing import Iterator

from .criteria import check_losing_lists, check_score_lists, losing_to_scores
from .model import (
    Arc,
    Hypertournament,
    Kind,
    ScoreLists,
    Shape,
    arcs_through,
    selection_vertices,
)

__all__ = [
    "AchievableSet",
    "BudgetExceededError",
    "CrossValidationReport",
    "DEFAULT_ASSIGNMENT_BUDGET",
    "SplitMix64",
    "achievable_losing_lists",
    "bounded_candidate_lists",
    "cross_validate",
    "enumerate_assignments",
    "random_hypertournament",
]

DEFAULT_ASSIGNMENT_BUDGET = 1_000_000

_MASK64 = (1 << 64) - 1


class BudgetExceededError(Exception):
    """The assignment space is larger than the enumeration budget."""

    def __init__(self, count: int | None, message: str):
        super().__init__(message)
        self.count = count


class SplitMix64:
    """SplitMix64 pseudo-random generator.

    Fixed here (rather than the standard library) so that seeded fixtures are
    reproducible bit-for-bit across platforms and implementations. ``below``
    draws without modulo bias by rejection.
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError(f"need a positive range, got {n}")
        zone = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < zone:
                return u % n


@dataclass(frozen=True)
class AchievableSet:
    """Exact set of sorted losing-score list tuples attainable on a shape."""

    shape: Shape
    lists: frozenset[tuple[tuple[int, ...], ...]]
    assignment_count: int


def _assignment_count(shape: Shape, budget: int) -> int:
    """Assignment-space size m**T, raising when it exceeds the budget."""
    m = sum(shape.alpha)
    total = shape.total_arcs()
    if m == 1:
        return 1
    count = m**total if total <= 1_000_000 else None
    if count is None or count > budget:
        shown = count if count is not None else f"more than {m}**{total}"
        raise BudgetExceededError(
            count, f"{shown} assignments exceed the enumeration budget {budget}"
        )
    return count


def enumerate_assignments(
    shape: Shape, *, budget: int = DEFAULT_ASSIGNMENT_BUDGET
) -> Iterator[Hypertournament]:
    """Yield every hypertournament of ``shape`` up to loser choice.

    Each selection keeps its canonical vertex order with one vertex moved to
    the last position; assignments stream in mixed-radix order over selections
    with selection 0 as the fastest digit.
    """
    _assignment_count(shape, budget)
    sels = selection_vertices(shape)
    m = sum(shape.alpha)
    t = len(sels)
    for digits in product(range(m), repeat=t):
        arcs = []
        for rank, sel in enumerate(sels):
            li = digits[t - 1 - rank]
            arcs.append(Arc(sel[:li] + sel[li + 1 :] + (sel[li],)))
        yield Hypertournament(shape, tuple(arcs))


def achievable_losing_lists(
    shape: Shape, *, budget: int = DEFAULT_ASSIGNMENT_BUDGET
) -> AchievableSet:
    """Exact set of sorted losing-score list tuples over all assignments."""
    count = _assignment_count(shape, budget)
    sels = selection_vertices(shape)
    offsets = tuple(accumulate(shape.n, initial=0))
    choice_vids = [tuple(offsets[v.part] + v.index for v in sel) for sel in sels]
    zeros = [0] * offsets[-1]
    spans = [(offsets[i], offsets[i + 1]) for i in range(shape.k)]
    found = set()
    for losers in product(*choice_vids):
        counts = zeros[:]
        for vid in losers:
            counts[vid] += 1
        found.add(tuple(tuple(sorted(counts[lo:hi])) for lo, hi in spans))
    return AchievableSet(shape, frozenset(found), count)


def random_hypertournament(
    shape: Shape, seed: int, mode: str = "loser-only"
) -> Hypertournament:
    """Seeded random hypertournament; identical arguments give identical output.

    ``loser-only`` keeps each selection in canonical order and draws only the
    loser; ``full-permutation`` draws a uniform ordering per selection
    (Fisher-Yates). Selections are visited in rank order.
    """
    if mode not in ("loser-only", "full-permutation"):
        raise ValueError(f"mode must be 'loser-only' or 'full-permutation', got {mode!r}")
    rng = SplitMix64(seed)
    arcs = []
    for sel in selection_vertices(shape):
        m = len(sel)
        if mode == "loser-only":
            li = rng.below(m)
            arcs.append(Arc(sel[:li] + sel[li + 1 :] + (sel[li],)))
        else:
            order = list(sel)
            for i in range(m - 1, 0, -1):
                j = rng.below(i + 1)
                order[i], order[j] = order[j], order[i]
            arcs.append(Arc(tuple(order)))
    return Hypertournament(shape, tuple(arcs))


def bounded_candidate_lists(
    shape: Shape, kind: Kind
) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every non-decreasing list tuple the predicates could possibly accept.

    Entries range over [0, arcs_through] per part and the grand total is
    pinned to the kind's forced value; partial sums prune the cross-part
    allocation.
    """
    total = shape.total_arcs()
    target = total if kind == "losing" else (sum(shape.alpha) - 1) * total
    per_part: list[dict[int, list[tuple[int, ...]]]] = []
    for i in range(shape.k):
        a_i = arcs_through(shape, i)
        by_sum: dict[int, list[tuple[int, ...]]] = {}
        for lst in combinations_with_replacement(range(a_i + 1), shape.n[i]):
            by_sum.setdefault(sum(lst), []).append(lst)
        per_part.append(by_sum)
    max_rest = [0] * (shape.k + 1)
    for i in range(shape.k - 1, -1, -1):
        max_rest[i] = max_rest[i + 1] + shape.n[i] * arcs_through(shape, i)

    def rec(i: int, remaining: int, chosen: list) -> Iterator:
        if i == shape.k:
            if remaining == 0:
                yield tuple(chosen)
            return
        for s, lists in per_part[i].items():
            if s > remaining or remaining - s > max_rest[i + 1]:
                continue
            for lst in lists:
                chosen.append(lst)
                yield from rec(i + 1, remaining - s, chosen)
                chosen.pop()

    yield from rec(0, target, [])


@dataclass(frozen=True)
class CrossValidationReport:
    """Predicate acceptance versus enumerated achievability, both kinds.

    Each ``only_*`` tuple lists symmetric-difference members and must be empty
    for the characterizations to be exact on the shape.
    """

    shape: Shape
    assignment_count: int
    losing_achievable_count: int
    losing_accepted_count: int
    losing_only_achievable: tuple
    losing_only_accepted: tuple
    score_achievable_count: int
    score_accepted_count: int
    score_only_achievable: tuple
    score_only_accepted: tuple

    @property
    def ok(self) -> bool:
        return not (
            self.losing_only_achievable
            or self.losing_only_accepted
            or self.score_only_achievable
            or self.score_only_accepted
        )


def cross_validate(shape: Shape, *, budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> CrossValidationReport:
    """Compare both decision procedures against exhaustive enumeration."""
    ach = achievable_losing_lists(shape, budget=budget)
    accepted_losing = {
        cand for cand in bounded_candidate_lists(shape, "losing")
        if check_losing_lists(shape, cand).valid
    }
    ach_scores = {
        losing_to_scores(shape, ScoreLists("losing", lists)).lists for lists in ach.lists
    }
    accepted_scores = {
        cand for cand in bounded_candidate_lists(shape, "score")
        if check_score_lists(shape, cand).valid
    }
    return CrossValidationReport(
        shape=shape,
        assignment_count=ach.assignment_count,
        losing_achievable_count=len(ach.lists),
        losing_accepted_count=len(accepted_losing),
        losing_only_achievable=tuple(sorted(ach.lists - accepted_losing)),
        losing_only_accepted=tuple(sorted(accepted_losing - ach.lists)),
        score_achievable_count=len(ach_scores),
        score_accepted_count=len(accepted_scores),
        score_only_achievable=tuple(sorted(ach_scores - accepted_scores)),
        score_only_accepted=tuple(sorted(accepted_scores - ach_scores)),
    )
