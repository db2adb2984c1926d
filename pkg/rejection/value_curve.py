"""
Total value as a function of the rejection threshold

The grid runs 0.5, 0.5+step, ..., 1.0; a reject-all sentinel point is
appended after tau = 1.0. Points are computed from per-outcome sorted
confidences, so each grid point costs one binary search per outcome.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config import DEFAULT_GRID_STEP, MAX_GRID_STEP
from evaluation import OUTCOMES, Outcome, OutcomeCounts, classify_outcome
from ingestion.records import PredictionRecord, ValueModel
from rejection.reject_option import RejectionPolicy, ThresholdReport, outcome_value, report_from_counts
from utils.errors import BadStep, EmptyInput

logger = logging.getLogger(__name__)

POS_OUTCOMES = (Outcome.TP, Outcome.FP)
NEG_OUTCOMES = (Outcome.TN, Outcome.FN)


def build_grid(grid_step: float = DEFAULT_GRID_STEP) -> List[float]:
    """Strictly increasing thresholds from 0.5 to 1.0 inclusive"""
    if not (math.isfinite(grid_step) and 0 < grid_step <= MAX_GRID_STEP):
        raise BadStep(grid_step)

    steps = int(math.floor(0.5 / grid_step + 1e-9))
    grid = [min(round(0.5 + i * grid_step, 12), 1.0) for i in range(steps + 1)]
    if grid[-1] < 1.0:
        grid.append(1.0)
    # rounding can collapse the last two points
    return sorted(set(grid))


class _SortedConfidences:
    """Confidences of the records split by outcome, each sorted ascending"""

    def __init__(self, records: Sequence[PredictionRecord]):
        confidence = np.array([r.confidence for r in records], dtype=float)
        outcomes = np.array([classify_outcome(r).value for r in records])
        self.by_outcome: Dict[Outcome, np.ndarray] = {
            o: np.sort(confidence[outcomes == o.value]) for o in OUTCOMES
        }

    def accepted(self, outcome: Outcome, taus: np.ndarray) -> np.ndarray:
        """Number of `outcome` records with confidence >= tau, per tau"""
        values = self.by_outcome[outcome]
        return len(values) - np.searchsorted(values, taus, side="left")

    def size(self, outcome: Outcome) -> int:
        return len(self.by_outcome[outcome])


def _counts_at(confidences: _SortedConfidences, accepted: Dict[Outcome, int]) -> OutcomeCounts:
    counts = OutcomeCounts()
    for o in OUTCOMES:
        counts.accepted[o] = int(accepted[o])
        counts.rejected[o] = confidences.size(o) - int(accepted[o])
    return counts


@dataclass
class ValueCurve:
    points: List[ThresholdReport]
    argmax: ThresholdReport

    @property
    def taus(self) -> List[float]:
        return [p.tau for p in self.points if not p.is_sentinel]

    @property
    def sentinel(self) -> Optional[ThresholdReport]:
        last = self.points[-1]
        return last if last.is_sentinel else None

    def argmax_points(self) -> List[ThresholdReport]:
        """Every point attaining the maximum value"""
        best = self.argmax.total_value
        return [p for p in self.points if p.total_value == best]

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for p in self.points:
            row = {
                "tau": p.tau,
                "policy": "reject_all" if p.is_sentinel else "threshold",
                "total_value": p.total_value,
                "mean_value": p.mean_value,
                "rejection_rate": p.rejection_rate,
                "accepted_accuracy": p.accepted_accuracy,
            }
            for o in OUTCOMES:
                row[f"accepted_{o.value}"] = p.counts.accepted[o]
                row[f"rejected_{o.value}"] = p.counts.rejected[o]
            rows.append(row)
        return pd.DataFrame(rows)


def _argmax(points: Sequence[ThresholdReport]) -> ThresholdReport:
    # first maximum wins: points are ordered by tau with the sentinel last
    best = points[0]
    for point in points[1:]:
        if point.total_value > best.total_value:
            best = point
    return best


def sweep(records: Sequence[PredictionRecord],
          value_model: ValueModel,
          grid_step: float = DEFAULT_GRID_STEP) -> ValueCurve:
    """V(tau) over the threshold grid plus the reject-all sentinel"""
    grid = build_grid(grid_step)
    if not records:
        raise EmptyInput("records")

    confidences = _SortedConfidences(records)
    taus = np.array(grid, dtype=float)
    accepted = {o: confidences.accepted(o, taus) for o in OUTCOMES}

    points: List[ThresholdReport] = []
    for i, tau in enumerate(grid):
        counts = _counts_at(confidences, {o: accepted[o][i] for o in OUTCOMES})
        points.append(report_from_counts(counts, value_model, RejectionPolicy.single(tau)))

    sentinel_counts = _counts_at(confidences, {o: 0 for o in OUTCOMES})
    points.append(report_from_counts(sentinel_counts, value_model, RejectionPolicy.reject_all()))

    curve = ValueCurve(points=points, argmax=_argmax(points))
    logger.info(f"📈 Swept {len(grid)} thresholds over {len(records)} records, "
                f"best tau={curve.argmax.tau:.3f} V={curve.argmax.total_value:.4g}")
    return curve


@dataclass
class PerClassCurve:
    """V over the (tau_pos, tau_neg) grid; values[i, j] is at (taus[i], taus[j])"""
    taus: List[float]
    values: np.ndarray
    argmax: ThresholdReport
    rejection_rates: np.ndarray = field(repr=False, default=None)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tau_pos": self.argmax.tau_pos,
            "tau_neg": self.argmax.tau_neg,
            "grid_size": len(self.taus),
            "best": self.argmax.to_dict(),
        }


def _class_values(confidences: _SortedConfidences,
                  outcomes: Tuple[Outcome, Outcome],
                  taus: np.ndarray,
                  value_model: ValueModel) -> Tuple[Dict[Outcome, np.ndarray], np.ndarray]:
    v_r = value_model.v_r
    accepted = {o: confidences.accepted(o, taus) for o in outcomes}
    values = np.zeros(len(taus), dtype=float)
    for o in outcomes:
        v = outcome_value(value_model, o)
        rejected = confidences.size(o) - accepted[o]
        values += (v - v_r) * accepted[o]
        values += (v_r - v) * rejected
    return accepted, values


def sweep_per_class(records: Sequence[PredictionRecord],
                    value_model: ValueModel,
                    grid_step: float = DEFAULT_GRID_STEP) -> PerClassCurve:
    """
    2-D sweep with separate thresholds for predicted-positive and
    predicted-negative decisions.

    Positive predictions depend only on tau_pos and negative ones only on
    tau_neg, so V(tau_pos, tau_neg) = V_pos(tau_pos) + V_neg(tau_neg).
    Ties resolve to the smallest tau_pos, then the smallest tau_neg.
    """
    grid = build_grid(grid_step)
    if not records:
        raise EmptyInput("records")

    confidences = _SortedConfidences(records)
    taus = np.array(grid, dtype=float)
    pos_accepted, pos_values = _class_values(confidences, POS_OUTCOMES, taus, value_model)
    neg_accepted, neg_values = _class_values(confidences, NEG_OUTCOMES, taus, value_model)

    values = pos_values[:, None] + neg_values[None, :]
    # row-major argmax returns the first maximum
    i, j = np.unravel_index(int(np.argmax(values)), values.shape)

    accepted = {o: pos_accepted[o][i] for o in POS_OUTCOMES}
    accepted.update({o: neg_accepted[o][j] for o in NEG_OUTCOMES})
    counts = _counts_at(confidences, accepted)
    best = report_from_counts(counts, value_model, RejectionPolicy(grid[i], grid[j]))

    total = len(records)
    pos_rejected = sum(confidences.size(o) - pos_accepted[o] for o in POS_OUTCOMES)
    neg_rejected = sum(confidences.size(o) - neg_accepted[o] for o in NEG_OUTCOMES)
    rejection_rates = (pos_rejected[:, None] + neg_rejected[None, :]) / total

    logger.info(f"📈 Per-class sweep best tau_pos={grid[i]:.3f} tau_neg={grid[j]:.3f}")
    return PerClassCurve(taus=grid, values=values, argmax=best, rejection_rates=rejection_rates)
