import pytest

from hyperscores import (
    BudgetExceededError,
    InfeasibleError,
    InvalidListsError,
    ScoreLists,
    Shape,
    TransformStep,
    VertexId,
    achievable_losing_lists,
    arcs_through,
    bounded_candidate_lists,
    check_losing_lists,
    losing_score_map,
    losing_scores,
    realize_flow,
    realize_inductive,
    saturate,
    validate,
)

V = VertexId

ROUND_TRIP_SHAPES = [
    Shape((2, 2), (1, 1)),
    Shape((3, 2), (1, 1)),
    Shape((3, 1), (1, 1)),
    Shape((2, 2, 2), (1, 1, 1)),
    Shape((4, 2), (2, 1)),
    Shape((3, 3), (2, 2)),
    Shape((4,), (2,)),
    Shape((5,), (3,)),
    Shape((6,), (2,)),
    Shape((2, 3), (2, 1)),
    Shape((3, 3), (1, 2)),
]


class TestSaturate:
    def test_single_step_example(self):
        shape = Shape((2, 2), (1, 1))
        sat, log = saturate(shape, [[1, 1], [1, 1]])
        assert sat.lists == ((1, 2), (0, 1))
        assert log.steps == (TransformStep(V(0, 1), V(1, 0)),)

    def test_already_saturated_is_identity(self):
        shape = Shape((2, 2), (1, 1))
        sat, log = saturate(shape, [[0, 2], [1, 1]])
        assert sat.lists == ((0, 2), (1, 1))
        assert log.steps == ()

    def test_at_bound_evaluation(self):
        # The final entry 2 already equals C(1,0) * C(2,1).
        shape = Shape((2, 2), (1, 1))
        assert arcs_through(shape, 0) == 2
        sat, log = saturate(shape, ScoreLists("losing", ((0, 2), (1, 1))))
        assert len(log.steps) == 0

    def test_invalid_input_rejected(self):
        with pytest.raises(InvalidListsError):
            saturate(Shape((2, 2), (1, 1)), [[0, 2], [0, 2]])

    def test_replay_reaches_saturated_lists(self):
        shape = Shape((3, 2), (2, 1))
        start = ((0, 1, 2), (1, 2))
        sat, log = saturate(shape, start)
        assert log.replay(start) == sat.lists
        assert sat.lists[0][-1] == arcs_through(shape, 0)

    def test_every_intermediate_passes_the_check(self):
        shape = Shape((3, 2), (2, 1))
        start = ((1, 1, 1), (1, 2))
        sat, log = saturate(shape, start)
        work = [list(lst) for lst in start]
        for step in log.steps:
            work[step.incremented.part][step.incremented.index] += 1
            work[step.decremented.part][step.decremented.index] -= 1
            assert check_losing_lists(shape, [tuple(lst) for lst in work]).valid
        assert tuple(tuple(lst) for lst in work) == sat.lists


class TestRealizeInductive:
    def test_shrink_case_example(self):
        shape = Shape((2, 2), (1, 1))
        m = realize_inductive(shape, [[0, 2], [1, 1]])
        assert losing_scores(m).lists == ((0, 2), (1, 1))
        assert validate(m) == []
        # The grown vertex u12 sits last in both arcs through it.
        assert m.arcs[1].loser == V(0, 1)
        assert m.arcs[3].loser == V(0, 1)

    def test_single_arc_base(self):
        shape = Shape((2, 3), (2, 3))
        lists = ((0, 0), (0, 0, 1))
        m = realize_inductive(shape, lists)
        assert len(m.arcs) == 1
        assert m.arcs[0].loser == V(1, 2)
        assert losing_scores(m).lists == lists

    def test_saturation_case_example(self):
        shape = Shape((2, 2), (1, 1))
        m = realize_inductive(shape, [[1, 1], [1, 1]])
        assert losing_scores(m).lists == ((1, 1), (1, 1))
        assert validate(m) == []

    def test_invalid_input_rejected(self):
        with pytest.raises(InvalidListsError):
            realize_inductive(Shape((2, 2), (1, 1)), [[0, 2], [0, 2]])

    def test_donorless_saturation(self):
        # The non-active lists sit at zero, so saturation must shift units
        # inside the active list itself.
        shape = Shape((4, 2), (2, 1))
        lists = ((3, 3, 3, 3), (0, 0))
        assert check_losing_lists(shape, lists).valid
        m = realize_inductive(shape, lists)
        assert losing_scores(m).lists == lists

    def test_rotation_when_first_part_has_no_slack(self):
        shape = Shape((2, 3), (2, 1))
        for lists in sorted(achievable_losing_lists(shape).lists):
            m = realize_inductive(shape, lists)
            assert losing_scores(m).lists == lists


class TestRealizeFlow:
    def test_flow_round_trip_example(self):
        shape = Shape((2, 2), (1, 1))
        m = realize_flow(shape, [[0, 2], [1, 1]])
        assert losing_scores(m).lists == ((0, 2), (1, 1))
        assert validate(m) == []

    def test_forced_assignment(self):
        shape = Shape((2, 2), (1, 1))
        m = realize_flow(shape, [[0, 0], [2, 2]])
        losing = losing_score_map(m)
        assert losing[V(1, 0)] == 2 and losing[V(1, 1)] == 2

    def test_infeasible_matches_checker(self):
        shape = Shape((2, 2), (1, 1))
        assert not check_losing_lists(shape, [[0, 2], [0, 2]]).valid
        with pytest.raises(InfeasibleError):
            realize_flow(shape, [[0, 2], [0, 2]])

    def test_total_mismatch_is_infeasible(self):
        with pytest.raises(InfeasibleError):
            realize_flow(Shape((2, 2), (1, 1)), [[0, 1], [1, 1]])

    def test_deterministic(self):
        shape = Shape((3, 2), (2, 1))
        a = realize_flow(shape, [[0, 1, 2], [1, 2]])
        b = realize_flow(shape, [[0, 1, 2], [1, 2]])
        assert a == b


@pytest.mark.parametrize("shape", ROUND_TRIP_SHAPES, ids=str)
def test_round_trip_and_oracle_agreement(shape):
    """Both realizers reproduce every valid list tuple; flow feasibility and
    predicate validity coincide over all bounded candidates."""
    assert shape.total_arcs() <= 64
    try:
        achievable = achievable_losing_lists(shape).lists
    except BudgetExceededError:
        achievable = None
    for cand in bounded_candidate_lists(shape, "losing"):
        valid = check_losing_lists(shape, cand).valid
        if achievable is not None:
            assert valid == (cand in achievable)
        try:
            m_flow = realize_flow(shape, cand)
            feasible = True
        except InfeasibleError:
            feasible = False
        assert feasible == valid
        if valid:
            assert losing_scores(m_flow).lists == cand
            m_ind = realize_inductive(shape, cand)
            assert losing_scores(m_ind).lists == cand
            assert validate(m_ind) == []
            assert validate(m_flow) == []


def test_full_candidate_space_agreement_including_bad_totals():
    # Wrong totals included: the checker rejects them and the flow realizer
    # reports them infeasible, in both directions.
    from itertools import combinations_with_replacement, product

    shape = Shape((2, 2), (1, 1))
    caps = [arcs_through(shape, i) for i in range(shape.k)]
    part_lists = [
        list(combinations_with_replacement(range(cap + 1), shape.n[i]))
        for i, cap in enumerate(caps)
    ]
    achievable = achievable_losing_lists(shape).lists
    for cand in product(*part_lists):
        valid = check_losing_lists(shape, cand).valid
        assert valid == (cand in achievable)
        try:
            realize_flow(shape, cand)
            feasible = True
        except InfeasibleError:
            feasible = False
        assert feasible == valid
