"""Score lists of multipartite hypertournaments.

Decide whether candidate losing-score or score lists are realizable, construct
witness hypertournaments when they are, and cross-validate both against
exhaustive enumeration at desk scale.
"""

from .combinatorics import (
    DEFAULT_MAGNITUDE_LIMIT,
    CapacityError,
    SubsetRank,
    binom,
    selection_rank,
    selection_unrank,
    subset_rank,
    subset_unrank,
    subsets_colex,
    total_selections,
)
from .model import (
    Arc,
    Hypertournament,
    Kind,
    NoEligibleArcError,
    ScoreLists,
    Shape,
    StructuralError,
    VertexId,
    Violation,
    arc_swap,
    arcs_through,
    conform_lists,
    losing_score_map,
    losing_scores,
    make_arc,
    score_map,
    scores,
    selection_vertices,
    validate,
)
from .criteria import (
    CheckResult,
    PrefixViolation,
    check_losing_lists,
    check_score_lists,
    check_single_part,
    losing_to_scores,
    scores_to_losing,
)
from .realize import (
    InfeasibleError,
    InvalidListsError,
    NoValidStepError,
    RealizationGapError,
    TransformLog,
    TransformStep,
    realize_flow,
    realize_inductive,
    saturate,
)
from .oracle import (
    DEFAULT_ASSIGNMENT_BUDGET,
    AchievableSet,
    BudgetExceededError,
    CrossValidationReport,
    SplitMix64,
    achievable_losing_lists,
    bounded_candidate_lists,
    cross_validate,
    enumerate_assignments,
    random_hypertournament,
)

__version__ = "0.1.0"

__all__ = [
    "AchievableSet",
    "Arc",
    "BudgetExceededError",
    "CapacityError",
    "CheckResult",
    "CrossValidationReport",
    "DEFAULT_ASSIGNMENT_BUDGET",
    "DEFAULT_MAGNITUDE_LIMIT",
    "Hypertournament",
    "InfeasibleError",
    "InvalidListsError",
    "Kind",
    "NoEligibleArcError",
    "NoValidStepError",
    "PrefixViolation",
    "RealizationGapError",
    "ScoreLists",
    "Shape",
    "SplitMix64",
    "StructuralError",
    "SubsetRank",
    "TransformLog",
    "TransformStep",
    "VertexId",
    "Violation",
    "achievable_losing_lists",
    "arc_swap",
    "arcs_through",
    "binom",
    "bounded_candidate_lists",
    "check_losing_lists",
    "check_score_lists",
    "check_single_part",
    "conform_lists",
    "cross_validate",
    "enumerate_assignments",
    "losing_score_map",
    "losing_scores",
    "losing_to_scores",
    "make_arc",
    "random_hypertournament",
    "realize_flow",
    "realize_inductive",
    "saturate",
    "score_map",
    "scores",
    "scores_to_losing",
    "selection_rank",
    "selection_unrank",
    "selection_vertices",
    "subset_rank",
    "subset_unrank",
    "subsets_colex",
    "total_selections",
    "validate",
]
