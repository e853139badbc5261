"""Decision procedures for losing-score and score lists.

A candidate tuple of lists is accepted exactly when every prefix tuple
(p_1, ..., p_k) with 0 <= p_i <= n_i satisfies the corresponding lower bound
and the full prefix meets it with equality. Both bounds are evaluated in exact
integer arithmetic; the score-side bound uses the integer form
sum_i p_i * C(n_i - 1, alpha_i - 1) * prod_{t != i} C(n_t, alpha_t) for the
linear term, which avoids rational arithmetic.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import accumulate, product
from typing import Sequence

from .combinatorics import binom
from .model import ScoreLists, Shape, arcs_through, conform_lists

__all__ = [
    "CheckResult",
    "PrefixViolation",
    "check_losing_lists",
    "check_score_lists",
    "check_single_part",
    "losing_to_scores",
    "scores_to_losing",
]


@dataclass(frozen=True)
class PrefixViolation:
    """A prefix tuple whose bound failed, with both side values."""

    prefix: tuple[int, ...]
    lhs: int
    rhs: int


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a list check.

    ``witness_violation`` is the lexicographically smallest violating prefix
    tuple, or the full prefix when only the equality clause fails; it is absent
    exactly when the input is valid.
    """

    valid: bool
    witness_violation: PrefixViolation | None
    equality_at_full: bool


def _violation_scan(shape, data, kind, p1_values, pruned):
    """First prefix-bound violation in lexicographic order, or None.

    ``pruned`` skips tuples that provably cannot violate (losing side: a zero
    product bound; score side: a non-positive bound), which never changes the
    outcome for non-negative lists. Runs in worker processes for partitioned
    checks, so it only touches picklable arguments.
    """
    k = shape.k
    pref = [tuple(accumulate(lst, initial=0)) for lst in data]
    if kind == "losing":
        rows = [
            tuple(binom(p, shape.alpha[i], limit=None) for p in range(shape.n[i] + 1))
            for i in range(k)
        ]
        first = [p for p in p1_values if not pruned or p >= shape.alpha[0]]
        rest = [
            range(shape.alpha[i], shape.n[i] + 1) if pruned else range(shape.n[i] + 1)
            for i in range(1, k)
        ]
        for p in product(first, *rest):
            rhs = 1
            for i, p_i in enumerate(p):
                rhs *= rows[i][p_i]
            lhs = sum(pref[i][p_i] for i, p_i in enumerate(p))
            if lhs < rhs:
                return (p, lhs, rhs)
        return None

    total = shape.total_arcs()
    through = [arcs_through(shape, i) for i in range(k)]
    rev_rows = [
        tuple(binom(shape.n[i] - p, shape.alpha[i], limit=None) for p in range(shape.n[i] + 1))
        for i in range(k)
    ]
    for p in product(list(p1_values), *[range(shape.n[i] + 1) for i in range(1, k)]):
        rhs = -total
        prod_term = 1
        for i, p_i in enumerate(p):
            rhs += p_i * through[i]
            prod_term *= rev_rows[i][p_i]
        rhs += prod_term
        if pruned and rhs <= 0:
            continue
        lhs = sum(pref[i][p_i] for i, p_i in enumerate(p))
        if lhs < rhs:
            return (p, lhs, rhs)
    return None


def _scan_job(args):
    return _violation_scan(*args)


def _check(shape: Shape, data, kind: str, pruned: bool, jobs: int) -> CheckResult:
    lhs_full = sum(sum(lst) for lst in data)
    total = shape.total_arcs()
    rhs_full = total if kind == "losing" else (sum(shape.alpha) - 1) * total
    equality = lhs_full == rhs_full

    p1_all = list(range(shape.n[0] + 1))
    if jobs > 1 and len(p1_all) > 1:
        workers = min(jobs, len(p1_all))
        step = math.ceil(len(p1_all) / workers)
        chunks = [p1_all[lo : lo + step] for lo in range(0, len(p1_all), step)]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            results = list(
                pool.map(_scan_job, [(shape, data, kind, chunk, pruned) for chunk in chunks])
            )
        # Chunks cover ascending p_1 ranges, so the first hit is the
        # lexicographic minimum.
        found = next((r for r in results if r is not None), None)
    else:
        found = _violation_scan(shape, data, kind, p1_all, pruned)

    if found is None and not equality:
        found = (tuple(shape.n), lhs_full, rhs_full)
    violation = None if found is None else PrefixViolation(*found)
    return CheckResult(violation is None and equality, violation, equality)


def check_losing_lists(shape: Shape, R, *, pruned: bool = False, jobs: int = 1) -> CheckResult:
    """Decide whether R can be the losing score lists of a hypertournament.

    Valid iff for every prefix tuple p, the summed prefixes of the lists are at
    least prod_i C(p_i, alpha_i), with equality at the full prefix. The full
    tuple space is scanned by default; ``pruned=True`` enables the
    result-identical skip of tuples with a vanishing bound, and ``jobs > 1``
    partitions the scan by the first coordinate across processes.
    """
    data = conform_lists(shape, R, "losing")
    return _check(shape, data, "losing", pruned, jobs)


def check_score_lists(shape: Shape, S, *, pruned: bool = False, jobs: int = 1) -> CheckResult:
    """Decide whether S can be the score lists of a hypertournament.

    Valid iff for every prefix tuple p, the summed prefixes are at least
    sum_i p_i * C(n_i - 1, alpha_i - 1) * prod_{t != i} C(n_t, alpha_t)
    + prod_i C(n_i - p_i, alpha_i) - prod_i C(n_i, alpha_i),
    with equality at the full prefix.
    """
    data = conform_lists(shape, S, "score")
    return _check(shape, data, "score", pruned, jobs)


def check_single_part(n: int, arity: int, R: Sequence[int]) -> CheckResult:
    """Single-part check: prefix sums against C(j, arity), equality at j = n."""
    if not n >= arity > 1:
        raise ValueError(f"need n >= arity > 1, got n={n}, arity={arity}")
    lst = ScoreLists("losing", (tuple(R),)).lists[0]
    if len(lst) != n:
        raise ValueError(f"expected {n} entries, got {len(lst)}")
    pref = tuple(accumulate(lst, initial=0))
    rhs_full = math.comb(n, arity)
    equality = pref[n] == rhs_full
    violation = None
    for j in range(1, n + 1):
        rhs = math.comb(j, arity)
        if pref[j] < rhs:
            violation = PrefixViolation((j,), pref[j], rhs)
            break
    if violation is None and not equality:
        violation = PrefixViolation((n,), pref[n], rhs_full)
    return CheckResult(violation is None and equality, violation, equality)


def _reverse_complement(shape: Shape, data) -> tuple[tuple[int, ...], ...]:
    out = []
    for i, lst in enumerate(data):
        a_i = arcs_through(shape, i)
        for x in lst:
            if x > a_i:
                raise ValueError(
                    f"part {i + 1}: entry {x} exceeds the per-vertex arc count {a_i}"
                )
        out.append(tuple(a_i - x for x in reversed(lst)))
    return tuple(out)


def losing_to_scores(shape: Shape, R) -> ScoreLists:
    """Score lists paired with losing lists R: reverse each list and complement
    every entry against the per-vertex arc count of its part."""
    data = conform_lists(shape, R, "losing")
    return ScoreLists("score", _reverse_complement(shape, data))


def scores_to_losing(shape: Shape, S) -> ScoreLists:
    """Inverse of :func:`losing_to_scores` (the map is an involution)."""
    data = conform_lists(shape, S, "score")
    return ScoreLists("losing", _reverse_complement(shape, data))
