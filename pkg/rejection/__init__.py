"""
Reject option, total-value curves and value-based model selection
"""

from .model_selection import ComparisonReport, ModelScore, compare_models
from .reject_option import (
    Decision,
    RejectionPolicy,
    ThresholdReport,
    decide,
    empirical_threshold,
    theoretical_threshold,
    total_value,
    value_at,
)
from .simulation import simulate_calibrated_records
from .value_curve import PerClassCurve, ValueCurve, build_grid, sweep, sweep_per_class

__all__ = [
    "ComparisonReport",
    "Decision",
    "ModelScore",
    "PerClassCurve",
    "RejectionPolicy",
    "ThresholdReport",
    "ValueCurve",
    "build_grid",
    "compare_models",
    "decide",
    "empirical_threshold",
    "simulate_calibrated_records",
    "sweep",
    "sweep_per_class",
    "theoretical_threshold",
    "total_value",
    "value_at",
]
