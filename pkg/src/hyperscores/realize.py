"""Witness construction for valid losing-score lists.

Two independent routes are provided. ``realize_inductive`` shrinks one part at
a time: when the last entry of the active list equals the per-vertex arc count
of its part, the corresponding vertex loses every arc through it and the rest
is built recursively on the smaller shape; otherwise that entry is first raised
to the bound by a sequence of list transformations (saturation) and each logged
step is afterwards undone on the constructed hypertournament by arc
interchanges. ``realize_flow`` instead assigns one loser per selection by exact
maximum flow and serves as an oracle for the first route.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import networkx as nx
from networkx.algorithms.flow import edmonds_karp

from .criteria import CheckResult, check_losing_lists
from .model import (
    Arc,
    Hypertournament,
    NoEligibleArcError,
    ScoreLists,
    Shape,
    VertexId,
    arcs_through,
    conform_lists,
    losing_score_map,
    selection_vertices,
)
from .combinatorics import selection_rank

__all__ = [
    "InfeasibleError",
    "InvalidListsError",
    "NoValidStepError",
    "RealizationGapError",
    "TransformLog",
    "TransformStep",
    "realize_flow",
    "realize_inductive",
    "saturate",
]


class InvalidListsError(ValueError):
    """Input lists fail the prefix-bound characterization."""

    def __init__(self, result: CheckResult):
        witness = result.witness_violation
        detail = "equality fails at the full prefix"
        if witness is not None:
            detail = f"violated at prefix {witness.prefix}: {witness.lhs} < {witness.rhs}"
        super().__init__(f"lists are not realizable: {detail}")
        self.result = result


class NoValidStepError(Exception):
    """No list transformation step preserves the prefix bounds."""


class RealizationGapError(Exception):
    """The inductive construction could not complete an interchange."""


class InfeasibleError(Exception):
    """The flow network cannot route one loss per selection at the targets."""


@dataclass(frozen=True)
class TransformStep:
    """One saturation move: +1 at ``incremented``, -1 at ``decremented``.

    Both fields are (part, index) positions into the lists. The preferred move
    takes the unit from another part's list; the decremented position sits in
    the incremented part itself only when no donor position preserves the
    bounds (always the case for single-part shapes).
    """

    incremented: VertexId
    decremented: VertexId


@dataclass(frozen=True)
class TransformLog:
    steps: tuple[TransformStep, ...]

    def replay(self, lists) -> tuple[tuple[int, ...], ...]:
        """Apply all steps to ``lists`` (used to re-derive the saturated lists)."""
        work = [list(lst) for lst in lists]
        for step in self.steps:
            work[step.incremented.part][step.incremented.index] += 1
            work[step.decremented.part][step.decremented.index] -= 1
        return tuple(tuple(lst) for lst in work)


def _min_run_end(lst) -> int:
    """Index of the last entry of the initial run of minimal equal entries."""
    h = 0
    while h + 1 < len(lst) and lst[h + 1] == lst[0]:
        h += 1
    return h


def _max_run_start(lst) -> int:
    """Index of the first entry of the final run of maximal equal entries."""
    t = len(lst) - 1
    while t - 1 >= 0 and lst[t - 1] == lst[-1]:
        t -= 1
    return t


def _non_decreasing(lst) -> bool:
    return all(a <= b for a, b in zip(lst, lst[1:]))


def _run_starts(lst) -> list[int]:
    return [t for t in range(len(lst)) if t == 0 or lst[t - 1] < lst[t]]


def _saturation_step(shape: Shape, lists, active: int) -> TransformStep | None:
    """Apply the first bound-preserving step to ``lists`` in place.

    The preferred move adds 1 at the end of the active list's initial minimal
    run and subtracts 1 at the start of a donor list's final maximal run,
    trying donors in part order. That move is not always available (a shape
    with a single part has no donor, and donor lists may all sit at zero), so
    two fallbacks follow: shifting a unit inside the active list itself (raise
    the last entry, take from the latest run start), and donor positions other
    than the canonical one. Every candidate is re-checked against the prefix
    bounds before being committed, so an unsound move can never be applied.
    """
    candidates: list[tuple[int, int, int]] = []  # (inc position, donor part, donor position)
    donor_parts = [s for s in range(shape.k) if s != active]
    inc_h = _min_run_end(lists[active])
    for s in donor_parts:
        candidates.append((inc_h, s, _max_run_start(lists[s])))
    inc_last = len(lists[active]) - 1
    for t in reversed(_run_starts(lists[active])):
        if t != inc_last:
            candidates.append((inc_last, active, t))
    for s in donor_parts:
        canonical = _max_run_start(lists[s])
        for t in reversed(_run_starts(lists[s])):
            if t != canonical:
                candidates.append((inc_h, s, t))

    for inc, s, t in candidates:
        if lists[s][t] == 0:
            continue
        trial = [list(lst) for lst in lists]
        trial[active][inc] += 1
        trial[s][t] -= 1
        if not _non_decreasing(trial[active]) or not _non_decreasing(trial[s]):
            continue
        if check_losing_lists(shape, trial).valid:
            lists[active][inc] += 1
            lists[s][t] -= 1
            return TransformStep(VertexId(active, inc), VertexId(s, t))
    return None


def _saturate(shape: Shape, lists, active: int) -> TransformLog:
    """Raise the active list's last entry to its bound, mutating ``lists``."""
    bound = arcs_through(shape, active)
    steps = []
    while lists[active][-1] < bound:
        step = _saturation_step(shape, lists, active)
        if step is None:
            raise NoValidStepError(
                f"no transformation preserves the prefix bounds at {lists}"
            )
        steps.append(step)
    return TransformLog(tuple(steps))


def saturate(shape: Shape, R) -> tuple[ScoreLists, TransformLog]:
    """Raise part 1's final entry to the per-vertex arc count of part 1.

    Requires valid input; returns the transformed lists together with the step
    log. Each step adds 1 inside part 1's list and subtracts 1 elsewhere
    (normally from another part's list, from part 1 itself when no donor
    position works), and every intermediate pair of lists is re-checked
    against the prefix bounds, so an impossible step surfaces as
    :class:`NoValidStepError` rather than being skipped. Already-saturated
    input comes back unchanged with an empty log.
    """
    data = conform_lists(shape, R, "losing")
    result = check_losing_lists(shape, data)
    if not result.valid:
        raise InvalidListsError(result)
    work = [list(lst) for lst in data]
    log = _saturate(shape, work, 0)
    return ScoreLists("losing", tuple(tuple(lst) for lst in work)), log


def _reassign_loser(M: Hypertournament, rank: int, new_loser: VertexId) -> Hypertournament:
    """Interchange the loser of the arc at ``rank`` with ``new_loser`` in it."""
    order = list(M.arcs[rank].order)
    i = order.index(new_loser)
    order[i], order[-1] = order[-1], order[i]
    return M.replace_arc(rank, Arc(tuple(order)))


def _move_loss(M: Hypertournament, source: VertexId, target: VertexId) -> Hypertournament:
    """Move exactly one loss from ``source`` to ``target`` by interchanges.

    A single interchange suffices when some arc contains both vertices with
    ``source`` last; in general the witness at hand may not carry such an arc
    even though the moved lists stay realizable, so the move walks a shortest
    chain u0=source, u1, ..., um=target where u_{i-1} loses an arc containing
    u_i and each arc's loser is reassigned along it. Intermediate vertices gain
    and lose one arc each, so only the two endpoint scores change. The search
    is breadth-first over arcs in rank order, which keeps the construction
    deterministic and picks the smallest-rank arc for the direct case.
    """
    loser_ranks: dict[VertexId, list[int]] = {}
    for rank, arc in enumerate(M.arcs):
        loser_ranks.setdefault(arc.order[-1], []).append(rank)
    parent: dict[VertexId, tuple[VertexId, int] | None] = {source: None}
    queue = deque([source])
    while queue and target not in parent:
        u = queue.popleft()
        for rank in loser_ranks.get(u, ()):
            for w in M.arcs[rank].order[:-1]:
                if w not in parent:
                    parent[w] = (u, rank)
                    queue.append(w)
            if target in parent:
                break
    if target not in parent:
        raise NoEligibleArcError(
            f"no chain of interchanges moves a loss from {source} to {target}"
        )
    chain = []
    v = target
    while parent[v] is not None:
        u, rank = parent[v]
        chain.append((rank, v))
        v = u
    for rank, new_loser in reversed(chain):  # ranks are distinct, order is cosmetic
        M = _reassign_loser(M, rank, new_loser)
    return M


def _realize(shape: Shape, lists) -> Hypertournament:
    active = next((i for i in range(shape.k) if shape.n[i] > shape.alpha[i]), None)
    if active is None:
        # Single selection: the unique unit entry marks the loser.
        sel = selection_vertices(shape)[0]
        losers = [
            VertexId(i, j)
            for i in range(shape.k)
            for j in range(shape.n[i])
            if lists[i][j] == 1
        ]
        if len(losers) != 1:
            raise RealizationGapError(
                f"single-arc shape needs exactly one unit loss, got lists {lists}"
            )
        prefix = tuple(v for v in sel if v != losers[0])
        return Hypertournament(shape, (Arc(prefix + (losers[0],)),))

    bound = arcs_through(shape, active)
    if lists[active][-1] == bound:
        return _extend(shape, lists, active)

    work = [list(lst) for lst in lists]
    log = _saturate(shape, work, active)
    M = _realize(shape, work)
    for step in reversed(log.steps):
        # The incremented vertex gives the loss back to the decremented one.
        try:
            M = _move_loss(M, step.incremented, step.decremented)
        except NoEligibleArcError as exc:
            raise RealizationGapError(
                f"no interchange chain supports undoing {step}"
            ) from exc
    return M


def _extend(shape: Shape, lists, active: int) -> Hypertournament:
    """Realize with the active part's last vertex losing every arc through it."""
    n_a = shape.n[active]
    new_vertex = VertexId(active, n_a - 1)
    sub_shape = Shape(
        shape.n[:active] + (n_a - 1,) + shape.n[active + 1 :], shape.alpha
    )
    sub_lists = [list(lst) for lst in lists]
    sub_lists[active] = sub_lists[active][:-1]
    sub = _realize(sub_shape, sub_lists)
    arcs = []
    for sel in selection_vertices(shape):
        if new_vertex in sel:
            arcs.append(Arc(tuple(v for v in sel if v != new_vertex) + (new_vertex,)))
        else:
            subsets = tuple(
                tuple(v.index for v in sel if v.part == part) for part in range(shape.k)
            )
            arcs.append(sub.arcs[selection_rank(subsets, sub_shape)])
    return Hypertournament(shape, tuple(arcs))


def realize_inductive(shape: Shape, R) -> Hypertournament:
    """Construct a hypertournament whose losing score lists equal R.

    Entry j of list i is realized at vertex (i, j). The recursion shrinks the
    first part that still has more vertices than its arity; parts without
    slack are skipped, and a shape with no slack anywhere carries the single
    arc directly. The result is verified against the targets before being
    returned, so a silent construction defect cannot escape.
    """
    data = conform_lists(shape, R, "losing")
    result = check_losing_lists(shape, data)
    if not result.valid:
        raise InvalidListsError(result)
    M = _realize(shape, [list(lst) for lst in data])
    targets = {
        VertexId(i, j): data[i][j]
        for i in range(shape.k)
        for j in range(shape.n[i])
    }
    if losing_score_map(M) != targets:
        raise RealizationGapError("constructed witness does not reproduce the input lists")
    return M


def realize_flow(shape: Shape, R) -> Hypertournament:
    """Assign one loser per selection by exact maximum flow.

    Network: source -> selection (capacity 1), selection -> each contained
    vertex (capacity 1), vertex -> sink (capacity = target loss count). The
    targets are realizable exactly when the maximum flow saturates every
    selection; otherwise :class:`InfeasibleError` is raised, which coincides
    with rejection by the losing-list check. Entry j of list i targets vertex
    (i, j).
    """
    data = conform_lists(shape, R, "losing")
    total = shape.total_arcs()
    grand = sum(sum(lst) for lst in data)
    if grand != total:
        raise InfeasibleError(f"entries sum to {grand}, but the shape has {total} arcs")

    sels = selection_vertices(shape)
    graph = nx.DiGraph()
    source, sink = "source", "sink"
    for rank, sel in enumerate(sels):
        graph.add_edge(source, ("sel", rank), capacity=1)
        for v in sel:
            graph.add_edge(("sel", rank), ("v", v.part, v.index), capacity=1)
    for i in range(shape.k):
        for j in range(shape.n[i]):
            graph.add_edge(("v", i, j), sink, capacity=data[i][j])

    value, flow = nx.maximum_flow(graph, source, sink, flow_func=edmonds_karp)
    if value < total:
        raise InfeasibleError(f"maximum flow {value} < {total}: lists are not realizable")

    arcs = []
    for rank, sel in enumerate(sels):
        out_flow = flow[("sel", rank)]
        chosen = [v for v in sel if out_flow.get(("v", v.part, v.index), 0) >= 1]
        assert len(chosen) == 1, "saturated selection must pick exactly one loser"
        loser = chosen[0]
        arcs.append(Arc(tuple(v for v in sel if v != loser) + (loser,)))
    return Hypertournament(shape, tuple(arcs))
