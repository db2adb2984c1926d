"""
Evaluation Module
Confusion-matrix outcomes, accepted/rejected counts and accuracy for a
classifier operating with a reject option
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Optional, Sequence

from ingestion.records import Label, PredictionRecord
from utils.errors import EmptyInput


class Outcome(str, Enum):
    TP = "TP"
    TN = "TN"
    FP = "FP"
    FN = "FN"


OUTCOMES = (Outcome.TP, Outcome.TN, Outcome.FP, Outcome.FN)
CORRECT_OUTCOMES = (Outcome.TP, Outcome.TN)


def classify_outcome(record: PredictionRecord) -> Outcome:
    """Confusion-matrix cell of a single record"""
    predicted = record.predicted_label
    if predicted == Label.POS:
        return Outcome.TP if record.true_label == Label.POS else Outcome.FP
    return Outcome.TN if record.true_label == Label.NEG else Outcome.FN


def _empty_counts() -> Dict[Outcome, int]:
    return {o: 0 for o in OUTCOMES}


@dataclass
class OutcomeCounts:
    """Accepted (N_p) and rejected (N_q) counts per outcome"""
    accepted: Dict[Outcome, int] = field(default_factory=_empty_counts)
    rejected: Dict[Outcome, int] = field(default_factory=_empty_counts)

    @property
    def total_accepted(self) -> int:
        return sum(self.accepted.values())

    @property
    def total_rejected(self) -> int:
        return sum(self.rejected.values())

    @property
    def total(self) -> int:
        return self.total_accepted + self.total_rejected

    @property
    def rejection_rate(self) -> float:
        return calculate_ratio(self.total_rejected, self.total) or 0.0

    @property
    def accepted_accuracy(self) -> Optional[float]:
        """Accuracy over accepted predictions; None when nothing was accepted"""
        correct = sum(self.accepted[o] for o in CORRECT_OUTCOMES)
        return calculate_ratio(correct, self.total_accepted)

    def to_dict(self) -> Dict[str, Dict[str, int]]:
        return {
            "accepted": {o.value: self.accepted[o] for o in OUTCOMES},
            "rejected": {o.value: self.rejected[o] for o in OUTCOMES},
        }


def calculate_ratio(part: int, total: int) -> Optional[float]:
    if total == 0:
        return None
    return part / total


def count_outcomes(records: Iterable[PredictionRecord]) -> Dict[Outcome, int]:
    counts = _empty_counts()
    for record in records:
        counts[classify_outcome(record)] += 1
    return counts


def calculate_accuracy(records: Sequence[PredictionRecord]) -> float:
    """
    Accuracy = Correct / Total, with every prediction accepted
    """
    if not records:
        raise EmptyInput("records")
    return sum(1 for r in records if r.is_correct) / len(records)
