"""
Value-based model comparison

Ranks models by their best achievable total value V(tau_O) next to the
plain accuracy ranking, and flags when the two pick different winners.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence

from config import DEFAULT_GRID_STEP
from evaluation import calculate_accuracy
from ingestion.records import PredictionRecord, ValueModel
from rejection.value_curve import ValueCurve, sweep
from utils.errors import ItemSetMismatch, TooFewModels

logger = logging.getLogger(__name__)


@dataclass
class ModelScore:
    model_id: str
    best_value: float
    best_tau: float
    best_is_sentinel: bool
    accepted_accuracy: Optional[float]
    rejection_rate: float
    accuracy: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model_id": self.model_id,
            "best_value": self.best_value,
            "best_tau": self.best_tau,
            "best_policy": "reject_all" if self.best_is_sentinel else "threshold",
            "accepted_accuracy": self.accepted_accuracy,
            "rejection_rate": self.rejection_rate,
            "accuracy": self.accuracy,
        }


@dataclass
class ComparisonReport:
    scores: List[ModelScore]
    ranking_by_value: List[str]
    ranking_by_accuracy: List[str]
    curves: Dict[str, ValueCurve]

    @property
    def rankings_disagree(self) -> bool:
        return self.ranking_by_value[0] != self.ranking_by_accuracy[0]

    def score(self, model_id: str) -> ModelScore:
        return next(s for s in self.scores if s.model_id == model_id)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "models": [s.to_dict() for s in self.scores],
            "ranking_by_value": self.ranking_by_value,
            "ranking_by_accuracy": self.ranking_by_accuracy,
            "rankings_disagree": self.rankings_disagree,
        }


def _check_item_sets(models: Mapping[str, Sequence[PredictionRecord]]) -> None:
    reference_id = min(models)
    reference = {r.item_id for r in models[reference_id]}
    for model_id in sorted(models):
        if {r.item_id for r in models[model_id]} != reference:
            raise ItemSetMismatch(model_id, reference_id)


def compare_models(models: Mapping[str, Sequence[PredictionRecord]],
                   value_model: ValueModel,
                   grid_step: float = DEFAULT_GRID_STEP) -> ComparisonReport:
    """
    Score every model by V(tau_O) and by accuracy at tau = 0.5.

    Ties in either ranking are broken by model_id in lexicographic order.
    """
    if len(models) < 2:
        raise TooFewModels(len(models))
    _check_item_sets(models)

    scores: List[ModelScore] = []
    curves: Dict[str, ValueCurve] = {}
    for model_id in sorted(models):
        records = models[model_id]
        curve = sweep(records, value_model, grid_step)
        best = curve.argmax
        curves[model_id] = curve
        scores.append(ModelScore(
            model_id=model_id,
            best_value=best.total_value,
            best_tau=best.tau,
            best_is_sentinel=best.is_sentinel,
            accepted_accuracy=best.accepted_accuracy,
            rejection_rate=best.rejection_rate,
            accuracy=calculate_accuracy(records),
        ))

    by_value = [s.model_id for s in sorted(scores, key=lambda s: (-s.best_value, s.model_id))]
    by_accuracy = [s.model_id for s in sorted(scores, key=lambda s: (-s.accuracy, s.model_id))]

    report = ComparisonReport(scores, by_value, by_accuracy, curves)
    if report.rankings_disagree:
        logger.warning(f"⚠️  Value ranking picks {by_value[0]}, accuracy ranking picks {by_accuracy[0]}")
    return report
