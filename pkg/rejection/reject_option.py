"""
Reject option and total value

A prediction with confidence c for class y is accepted iff c >= tau_y.
Accepted outcomes p add (V_p - V_r) each; rejected outcomes q add (V_r - V_q),
so rejecting a wrong decision earns value and rejecting a right one costs it.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Sequence

from evaluation import OUTCOMES, Outcome, OutcomeCounts, classify_outcome
from ingestion.records import Label, PredictionRecord, ValueModel
from utils.errors import BadThreshold, EmptyInput, UndefinedGamma


class Decision(str, Enum):
    ACCEPT = "accept"
    REJECT = "reject"


@dataclass(frozen=True)
class RejectionPolicy:
    tau_pos: float
    tau_neg: float
    reject_all_sentinel: bool = False

    def __post_init__(self):
        for tau in (self.tau_pos, self.tau_neg):
            if not 0.5 <= tau <= 1.0:
                raise BadThreshold(tau)

    @classmethod
    def single(cls, tau: float) -> "RejectionPolicy":
        return cls(tau, tau)

    @classmethod
    def reject_all(cls) -> "RejectionPolicy":
        return cls(1.0, 1.0, reject_all_sentinel=True)

    def threshold_for(self, label: Label) -> float:
        return self.tau_pos if label == Label.POS else self.tau_neg


def decide(confidence: float, predicted_class: Label, policy: RejectionPolicy) -> Decision:
    if policy.reject_all_sentinel:
        return Decision.REJECT
    if confidence >= policy.threshold_for(predicted_class):
        return Decision.ACCEPT
    return Decision.REJECT


def outcome_value(value_model: ValueModel, outcome: Outcome) -> float:
    return {
        Outcome.TP: value_model.v_tp,
        Outcome.TN: value_model.v_tn,
        Outcome.FP: value_model.v_fp,
        Outcome.FN: value_model.v_fn,
    }[outcome]


def total_value(counts: OutcomeCounts, value_model: ValueModel) -> float:
    v_r = value_model.v_r
    total = 0.0
    for outcome in OUTCOMES:
        v = outcome_value(value_model, outcome)
        total += (v - v_r) * counts.accepted[outcome]
        total += (v_r - v) * counts.rejected[outcome]
    return total


@dataclass
class ThresholdReport:
    tau: float
    total_value: float
    rejection_rate: float
    accepted_accuracy: Optional[float]
    counts: OutcomeCounts = field(default_factory=OutcomeCounts)
    tau_pos: Optional[float] = None
    tau_neg: Optional[float] = None
    is_sentinel: bool = False

    @property
    def mean_value(self) -> float:
        """Average value per decision"""
        total = self.counts.total
        return self.total_value / total if total else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tau": self.tau,
            "tau_pos": self.tau_pos if self.tau_pos is not None else self.tau,
            "tau_neg": self.tau_neg if self.tau_neg is not None else self.tau,
            "policy": "reject_all" if self.is_sentinel else "threshold",
            "total_value": self.total_value,
            "mean_value": self.mean_value,
            "rejection_rate": self.rejection_rate,
            "accepted_accuracy": self.accepted_accuracy,
            "counts": self.counts.to_dict(),
        }


def report_from_counts(counts: OutcomeCounts, value_model: ValueModel, policy: RejectionPolicy) -> ThresholdReport:
    tau = policy.tau_pos if policy.tau_pos == policy.tau_neg else max(policy.tau_pos, policy.tau_neg)
    return ThresholdReport(
        tau=tau,
        total_value=total_value(counts, value_model),
        rejection_rate=counts.rejection_rate,
        accepted_accuracy=counts.accepted_accuracy,
        counts=counts,
        tau_pos=policy.tau_pos,
        tau_neg=policy.tau_neg,
        is_sentinel=policy.reject_all_sentinel,
    )


def value_at(records: Sequence[PredictionRecord],
             value_model: ValueModel,
             policy: RejectionPolicy) -> ThresholdReport:
    """Total value V(tau) of the records under one rejection policy"""
    if not records:
        raise EmptyInput("records")

    counts = OutcomeCounts()
    for record in records:
        outcome = classify_outcome(record)
        if decide(record.confidence, record.predicted_label, policy) == Decision.ACCEPT:
            counts.accepted[outcome] += 1
        else:
            counts.rejected[outcome] += 1
    return report_from_counts(counts, value_model, policy)


def theoretical_threshold(value_model: ValueModel, label: Label) -> float:
    """
    Optimal threshold gamma / (gamma + 1), gamma = |V_wrong| / V_correct.

    Rounded to 12 decimals so that rescaling a class's values jointly
    cannot move the result by a rounding ulp.
    """
    correct = value_model.correct_value(label)
    if correct == 0:
        raise UndefinedGamma(label.value)
    gamma = abs(value_model.incorrect_value(label)) / correct
    return round(gamma / (gamma + 1.0), 12)


def empirical_threshold(value_model: ValueModel, label: Label) -> Optional[float]:
    """
    Confidence above which accepting beats rejecting for a calibrated model,
    (V_r - V_wrong) / (V_correct - V_wrong). Equals the theoretical threshold
    when V_r = 0. None when correct and wrong decisions are valued equally.
    """
    correct = value_model.correct_value(label)
    wrong = value_model.incorrect_value(label)
    if correct == wrong:
        return None
    return (value_model.v_r - wrong) / (correct - wrong)
