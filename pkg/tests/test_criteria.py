import pytest
from hypothesis import given, settings, strategies as st

from hyperscores import (
    CheckResult,
    PrefixViolation,
    ScoreLists,
    Shape,
    SplitMix64,
    achievable_losing_lists,
    arcs_through,
    check_losing_lists,
    check_score_lists,
    check_single_part,
    enumerate_assignments,
    losing_scores,
    losing_to_scores,
    random_hypertournament,
    scores,
    scores_to_losing,
)

SMALL_SHAPES = [
    Shape((2, 2), (1, 1)),
    Shape((3, 2), (1, 1)),
    Shape((3, 2), (2, 1)),
    Shape((2, 2, 2), (1, 1, 1)),
    Shape((4,), (2,)),
]


def random_sorted_lists(shape, rng, kind):
    caps = [arcs_through(shape, i) for i in range(shape.k)]
    lists = tuple(
        tuple(sorted(rng.below(caps[i] + 1) for _ in range(shape.n[i])))
        for i in range(shape.k)
    )
    return ScoreLists(kind, lists)


class TestCheckLosing:
    def test_valid_example(self):
        shape = Shape((2, 2), (1, 1))
        result = check_losing_lists(shape, [[0, 2], [1, 1]])
        assert result == CheckResult(True, None, True)
        # Achievability confirmed by brute force over the 16 assignments.
        assert ((0, 2), (1, 1)) in achievable_losing_lists(shape).lists

    def test_invalid_at_small_prefix(self):
        shape = Shape((2, 2), (1, 1))
        result = check_losing_lists(shape, [[0, 2], [0, 2]])
        assert not result.valid
        assert result.witness_violation == PrefixViolation((1, 1), 0, 1)
        assert result.equality_at_full
        assert ((0, 2), (0, 2)) not in achievable_losing_lists(shape).lists

    def test_equality_failure(self):
        result = check_losing_lists(Shape((2, 2), (1, 1)), [[0, 1], [1, 1]])
        assert not result.valid
        assert not result.equality_at_full
        assert result.witness_violation == PrefixViolation((2, 2), 3, 4)

    def test_total_above_reports_full_prefix(self):
        result = check_losing_lists(Shape((2, 2), (1, 1)), [[0, 3], [1, 1]])
        assert not result.valid
        assert not result.equality_at_full
        assert result.witness_violation == PrefixViolation((2, 2), 5, 4)

    def test_kind_mismatch(self):
        with pytest.raises(ValueError):
            check_losing_lists(Shape((2, 2), (1, 1)), ScoreLists("score", ((0, 2), (1, 1))))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            check_losing_lists(Shape((2, 2), (1, 1)), [[0, 2, 0], [1, 1]])

    def test_non_monotone_rejected(self):
        with pytest.raises(ValueError):
            check_losing_lists(Shape((2, 2), (1, 1)), [[2, 0], [1, 1]])

    def test_necessity_on_enumerated(self):
        shape = Shape((3, 1), (1, 1))
        for m in enumerate_assignments(shape):
            assert check_losing_lists(shape, losing_scores(m)).valid
            assert check_score_lists(shape, scores(m)).valid

    def test_necessity_on_random(self):
        for seed in range(25):
            shape = SMALL_SHAPES[seed % len(SMALL_SHAPES)]
            m = random_hypertournament(shape, seed, "full-permutation")
            assert check_losing_lists(shape, losing_scores(m)).valid
            assert check_score_lists(shape, scores(m)).valid


class TestCheckScores:
    def test_valid_example_with_tight_prefix(self):
        shape = Shape((2, 2), (1, 1))
        result = check_score_lists(shape, [[0, 2], [1, 1]])
        assert result == CheckResult(True, None, True)
        # The bound is tight at p=(1,1): lhs = 1 = rhs.
        data = ((0, 2), (1, 1))
        lhs = data[0][0] + data[1][0]
        rhs = 1 * 2 + 1 * 2 + 1 * 1 - 4
        assert (lhs, rhs) == (1, 1)

    def test_all_zero_invalid(self):
        result = check_score_lists(Shape((2, 2), (1, 1)), [[0, 0], [0, 0]])
        assert not result.valid
        assert not result.equality_at_full
        assert result.witness_violation == PrefixViolation((1, 1), 0, 1)

    def test_converted_valid_lists_stay_valid(self):
        shape = Shape((3, 2), (2, 1))
        for lists in achievable_losing_lists(shape).lists:
            s = losing_to_scores(shape, ScoreLists("losing", lists))
            assert check_score_lists(shape, s).valid


class TestSinglePart:
    def test_staircase_valid(self):
        # Brute force over the 8 loser assignments of the 3 pair-arcs agrees.
        shape = Shape((3,), (2,))
        assert ((0, 1, 2),) in achievable_losing_lists(shape).lists
        assert check_single_part(3, 2, [0, 1, 2]).valid

    def test_cyclic_valid(self):
        shape = Shape((3,), (2,))
        assert ((1, 1, 1),) in achievable_losing_lists(shape).lists
        assert check_single_part(3, 2, [1, 1, 1]).valid

    def test_concentrated_invalid(self):
        result = check_single_part(3, 2, [0, 0, 3])
        assert not result.valid
        assert result.witness_violation == PrefixViolation((2,), 0, 1)

    def test_rejects_bad_arity(self):
        with pytest.raises(ValueError):
            check_single_part(3, 1, [0, 1, 2])
        with pytest.raises(ValueError):
            check_single_part(2, 3, [0, 0])

    def test_agrees_with_k1_reduction(self):
        from itertools import combinations_with_replacement

        for n in range(2, 8):
            for arity in (2, 3):
                if arity > n:
                    continue
                shape = Shape((n,), (arity,))
                cap = arcs_through(shape, 0)
                seen = 0
                for lst in combinations_with_replacement(range(cap + 1), n):
                    seen += 1
                    assert check_single_part(n, arity, lst) == check_losing_lists(
                        shape, (lst,)
                    )
                assert seen > 0


class TestConversion:
    def test_reverse_complement_example(self):
        shape = Shape((2, 2), (1, 1))
        assert losing_to_scores(shape, [[0, 2], [1, 1]]).lists == ((0, 2), (1, 1))

    def test_forced_totals_example(self):
        shape = Shape((2, 2), (1, 1))
        assert losing_to_scores(shape, [[0, 0], [2, 2]]).lists == ((2, 2), (0, 0))

    def test_entry_above_bound_rejected(self):
        with pytest.raises(ValueError):
            losing_to_scores(Shape((2, 2), (1, 1)), [[0, 3], [1, 1]])
        with pytest.raises(ValueError):
            scores_to_losing(Shape((2, 2), (1, 1)), [[0, 3], [1, 1]])

    def test_involution_on_random_lists(self):
        rng = SplitMix64(2024)
        for shape in SMALL_SHAPES:
            for _ in range(50):
                r = random_sorted_lists(shape, rng, "losing")
                assert scores_to_losing(shape, losing_to_scores(shape, r)) == r

    def test_matches_per_vertex_complement(self):
        shape = Shape((3, 2), (2, 1))
        m = random_hypertournament(shape, seed=77)
        assert losing_to_scores(shape, losing_scores(m)) == scores(m)


class TestEquivalence:
    def test_score_check_equals_converted_losing_check(self):
        rng = SplitMix64(99)
        for shape in SMALL_SHAPES:
            for _ in range(100):
                s = random_sorted_lists(shape, rng, "score")
                converted = scores_to_losing(shape, s)
                assert (
                    check_score_lists(shape, s).valid
                    == check_losing_lists(shape, converted).valid
                )


@st.composite
def shape_and_lists(draw):
    k = draw(st.integers(1, 3))
    n = tuple(draw(st.integers(1, 3)) for _ in range(k))
    alpha = tuple(draw(st.integers(1, n_i)) for n_i in n)
    shape = Shape(n, alpha)
    kind = draw(st.sampled_from(["losing", "score"]))
    caps = [arcs_through(shape, i) for i in range(k)]
    lists = tuple(
        tuple(sorted(draw(st.integers(0, caps[i])) for _ in range(n[i])))
        for i in range(k)
    )
    return shape, kind, lists


class TestPrunedAndParallel:
    @settings(max_examples=200, deadline=None)
    @given(shape_and_lists())
    def test_pruned_identical_to_naive(self, case):
        shape, kind, lists = case
        fn = check_losing_lists if kind == "losing" else check_score_lists
        assert fn(shape, lists, pruned=True) == fn(shape, lists, pruned=False)

    def test_jobs_identical_to_sequential(self):
        shape = Shape((3, 2), (2, 1))
        for lists in ([[0, 1, 2], [1, 2]], [[0, 0, 0], [3, 3]], [[1, 1, 1], [1, 2]]):
            seq = check_losing_lists(shape, lists, jobs=1)
            par = check_losing_lists(shape, lists, jobs=2)
            assert seq == par
        s = [[1, 2, 3], [2, 4]]
        assert check_score_lists(shape, s, jobs=3) == check_score_lists(shape, s)
