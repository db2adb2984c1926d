"""
Survey statistics: normalization, scenario values, reliability and validity
"""

from .aggregation import (
    SCENARIOS,
    ScenarioValueTable,
    build_scenario_table,
    question_medians,
    scenario_ordering,
    scenario_values,
)
from .normalization import NormalizedResponse, normalize_me, normalize_responses, normalize_signed, signed_value
from .rank_tests import RankTestResult, kendall_tau_b, kruskal_wallis, mann_whitney_u, spearman
from .reliability import DistanceMetric, interpret_alpha, krippendorff_alpha, ratings_matrix
from .validity import GroupDifference, ValidityReport, convergent_validity, group_differences

__all__ = [
    "SCENARIOS",
    "DistanceMetric",
    "GroupDifference",
    "NormalizedResponse",
    "RankTestResult",
    "ScenarioValueTable",
    "ValidityReport",
    "build_scenario_table",
    "convergent_validity",
    "group_differences",
    "interpret_alpha",
    "kendall_tau_b",
    "krippendorff_alpha",
    "kruskal_wallis",
    "mann_whitney_u",
    "normalize_me",
    "normalize_responses",
    "normalize_signed",
    "question_medians",
    "ratings_matrix",
    "scenario_ordering",
    "scenario_values",
    "signed_value",
]
