"""Multipartite hypertournament model.

A shape fixes k disjoint parts with n_i vertices each and per-part arities
alpha_i. A hypertournament stores exactly one ordered arc per selection (one
alpha_i-subset per part), densely indexed by selection rank; the vertex in the
last position of an arc is that arc's loser. All values are immutable after
construction and all operations are pure, so concurrent reads are safe.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Literal, Mapping, NamedTuple, Sequence

from .combinatorics import binom, subsets_colex, total_selections

__all__ = [
    "Arc",
    "Hypertournament",
    "Kind",
    "NoEligibleArcError",
    "ScoreLists",
    "Shape",
    "StructuralError",
    "VertexId",
    "Violation",
    "arc_swap",
    "arcs_through",
    "conform_lists",
    "losing_score_map",
    "losing_scores",
    "make_arc",
    "score_map",
    "scores",
    "selection_vertices",
    "validate",
]

Kind = Literal["losing", "score"]


class VertexId(NamedTuple):
    """Vertex identified by (part, index), both 0-based internally."""

    part: int
    index: int


class StructuralError(Exception):
    """A hypertournament failed a structural requirement."""


class NoEligibleArcError(Exception):
    """No arc contains both requested vertices with the designated loser last."""


@dataclass(frozen=True)
class Shape:
    """Instance signature: part sizes ``n`` and per-part arities ``alpha``."""

    n: tuple[int, ...]
    alpha: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "n", tuple(int(v) for v in self.n))
        object.__setattr__(self, "alpha", tuple(int(v) for v in self.alpha))
        if not self.n:
            raise ValueError("a shape needs at least one part")
        if len(self.n) != len(self.alpha):
            raise ValueError(f"{len(self.n)} part sizes but {len(self.alpha)} arities")
        for i, (n_i, a_i) in enumerate(zip(self.n, self.alpha)):
            if not 1 <= a_i <= n_i:
                raise ValueError(
                    f"part {i + 1}: need 1 <= alpha <= n, got alpha={a_i}, n={n_i}"
                )
        total_selections(self)  # enforces the magnitude guard

    @property
    def k(self) -> int:
        return len(self.n)

    def total_arcs(self) -> int:
        """Number of arcs of any hypertournament of this shape."""
        return total_selections(self, limit=None)

    def vertices(self) -> Iterator[VertexId]:
        for part, n_i in enumerate(self.n):
            for index in range(n_i):
                yield VertexId(part, index)


@dataclass(frozen=True, slots=True)
class Arc:
    """Ordered tuple of distinct vertices; the last position is the loser."""

    order: tuple[VertexId, ...]

    @property
    def loser(self) -> VertexId:
        return self.order[-1]

    def __iter__(self) -> Iterator[VertexId]:
        return iter(self.order)

    def __len__(self) -> int:
        return len(self.order)

    def __contains__(self, vertex: object) -> bool:
        return vertex in self.order


def make_arc(vertices: Sequence[VertexId], loser: VertexId) -> Arc:
    """Arc on ``vertices`` losing at ``loser``, non-losers in canonical order."""
    verts = tuple(vertices)
    if loser not in verts:
        raise ValueError(f"loser {loser} is not among the arc's vertices")
    if len(set(verts)) != len(verts):
        raise ValueError("arc vertices must be distinct")
    prefix = tuple(sorted(v for v in verts if v != loser))
    return Arc(prefix + (loser,))


@dataclass(frozen=True)
class Hypertournament:
    """One arc per selection, densely indexed by selection rank."""

    shape: Shape
    arcs: tuple[Arc, ...]

    def replace_arc(self, rank: int, arc: Arc) -> "Hypertournament":
        return Hypertournament(self.shape, self.arcs[:rank] + (arc,) + self.arcs[rank + 1 :])


@dataclass(frozen=True)
class ScoreLists:
    """Per-part non-decreasing integer lists, tagged ``losing`` or ``score``."""

    kind: Kind
    lists: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.kind not in ("losing", "score"):
            raise ValueError(f"kind must be 'losing' or 'score', got {self.kind!r}")
        lists = tuple(tuple(int(x) for x in lst) for lst in self.lists)
        object.__setattr__(self, "lists", lists)
        for i, lst in enumerate(lists):
            for a, b in zip(lst, lst[1:]):
                if a > b:
                    raise ValueError(f"part {i + 1} list is not non-decreasing: {list(lst)}")
            if lst and lst[0] < 0:
                raise ValueError(f"part {i + 1} list has a negative entry: {list(lst)}")

    @classmethod
    def from_map(cls, kind: Kind, shape: Shape, by_vertex: Mapping[VertexId, int]) -> "ScoreLists":
        """Sorted lists from a per-vertex map; keeps the map out of the value."""
        lists = tuple(
            tuple(sorted(by_vertex.get(VertexId(part, j), 0) for j in range(n_i)))
            for part, n_i in enumerate(shape.n)
        )
        return cls(kind, lists)

    def total(self) -> int:
        return sum(sum(lst) for lst in self.lists)


def conform_lists(shape: Shape, lists, kind: Kind) -> tuple[tuple[int, ...], ...]:
    """Validate lists against a shape and return them as plain tuples.

    Accepts a :class:`ScoreLists` (whose kind must match) or raw per-part
    sequences; rejects non-monotone or negative entries and length mismatches.
    """
    if isinstance(lists, ScoreLists):
        if lists.kind != kind:
            raise ValueError(f"expected {kind} lists, got kind={lists.kind!r}")
        data = lists.lists
    else:
        data = ScoreLists(kind, tuple(tuple(lst) for lst in lists)).lists
    if len(data) != shape.k:
        raise ValueError(f"expected {shape.k} lists, got {len(data)}")
    for i, lst in enumerate(data):
        if len(lst) != shape.n[i]:
            raise ValueError(
                f"part {i + 1}: expected {shape.n[i]} entries, got {len(lst)}"
            )
    return data


@lru_cache(maxsize=256)
def selection_vertices(shape: Shape) -> tuple[tuple[VertexId, ...], ...]:
    """All selections of ``shape`` as canonically ordered vertex tuples, by rank."""
    per_part = [subsets_colex(shape.n[i], shape.alpha[i]) for i in range(shape.k)]
    radices = [len(subsets) for subsets in per_part]
    digits = [0] * shape.k
    out = []
    for _ in range(shape.total_arcs()):
        out.append(
            tuple(
                VertexId(part, e)
                for part in range(shape.k)
                for e in per_part[part][digits[part]]
            )
        )
        for part in range(shape.k):  # odometer, part 1 fastest
            digits[part] += 1
            if digits[part] < radices[part]:
                break
            digits[part] = 0
    return tuple(out)


def arcs_through(shape: Shape, part: int) -> int:
    """Number of arcs containing any fixed vertex of ``part``.

    Equals C(n_p - 1, alpha_p - 1) times the product of C(n_t, alpha_t) over
    the other parts, i.e. the alpha_p/n_p fraction of all arcs.
    """
    if not 0 <= part < shape.k:
        raise ValueError(f"part index {part} outside [0, {shape.k})")
    total = binom(shape.n[part] - 1, shape.alpha[part] - 1)
    for t in range(shape.k):
        if t != part:
            total *= binom(shape.n[t], shape.alpha[t])
    return total


def losing_score_map(M: Hypertournament) -> dict[VertexId, int]:
    """Loss count per vertex: arcs in which the vertex sits last."""
    counts = {v: 0 for v in M.shape.vertices()}
    try:
        for arc in M.arcs:
            counts[arc.order[-1]] += 1
    except KeyError as exc:
        raise StructuralError(f"arc loses at unknown vertex {exc.args[0]}") from exc
    return counts


def score_map(M: Hypertournament) -> dict[VertexId, int]:
    """Score per vertex: arcs containing it in which it is not last."""
    counts = {v: 0 for v in M.shape.vertices()}
    try:
        for arc in M.arcs:
            for v in arc.order[:-1]:
                counts[v] += 1
    except KeyError as exc:
        raise StructuralError(f"arc contains unknown vertex {exc.args[0]}") from exc
    return counts


def losing_scores(M: Hypertournament) -> ScoreLists:
    """Per-part sorted losing score lists of a structurally valid M."""
    return ScoreLists.from_map("losing", M.shape, losing_score_map(M))


def scores(M: Hypertournament) -> ScoreLists:
    """Per-part sorted score lists of a structurally valid M."""
    return ScoreLists.from_map("score", M.shape, score_map(M))


@dataclass(frozen=True)
class Violation:
    """One structural defect, anchored at a selection rank where applicable."""

    selection_rank: int | None
    kind: str
    detail: str


def validate(M: Hypertournament) -> list[Violation]:
    """Structural report for M; empty exactly when M is well formed.

    Checks one arc per selection rank, per-arc distinctness and arity, and
    agreement between each arc's vertex set and its selection. Violations are
    data, not failures.
    """
    shape = M.shape
    expected = selection_vertices(shape)
    out: list[Violation] = []
    for rank, sel in enumerate(expected):
        if rank >= len(M.arcs) or M.arcs[rank] is None:
            out.append(Violation(rank, "missing-arc", f"no arc stored for selection {rank}"))
            continue
        order = M.arcs[rank].order
        if len(set(order)) != len(order):
            out.append(Violation(rank, "duplicate-vertex", f"arc repeats a vertex: {order}"))
            continue
        bad = [
            v
            for v in order
            if not (0 <= v.part < shape.k and 0 <= v.index < shape.n[v.part])
        ]
        if bad:
            out.append(Violation(rank, "bad-vertex", f"vertices outside the shape: {bad}"))
            continue
        arity = Counter(v.part for v in order)
        if any(arity.get(p, 0) != shape.alpha[p] for p in range(shape.k)):
            got = [arity.get(p, 0) for p in range(shape.k)]
            out.append(
                Violation(rank, "arity-mismatch", f"per-part counts {got} != {list(shape.alpha)}")
            )
            continue
        if tuple(sorted(order)) != sel:
            out.append(
                Violation(rank, "selection-mismatch", f"arc vertices do not match selection {rank}")
            )
    for rank in range(len(expected), len(M.arcs)):
        out.append(Violation(rank, "extra-arc", "arc beyond the selection table"))
    return out


def arc_swap(M: Hypertournament, a: VertexId, b: VertexId) -> Hypertournament:
    """Interchange ``a`` and ``b`` in one arc so that ``a`` becomes its loser.

    Picks the eligible arc (containing both vertices, with ``b`` last) of
    smallest selection rank, so the operation is deterministic. The result
    loses one more arc at ``a`` and one fewer at ``b``; every other vertex
    keeps both of its scores.
    """
    a = VertexId(*a)
    b = VertexId(*b)
    if a == b:
        raise ValueError("the two vertices must differ")
    for rank, arc in enumerate(M.arcs):
        order = arc.order
        if order[-1] == b and a in order:
            swapped = list(order)
            i = swapped.index(a)
            swapped[i], swapped[-1] = swapped[-1], swapped[i]
            return M.replace_arc(rank, Arc(tuple(swapped)))
    raise NoEligibleArcError(f"no arc contains both {a} and {b} with {b} last")
