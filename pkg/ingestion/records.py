"""
Core data model shared by every stage: classifier outputs, value models,
survey answers and corpus documents.
"""

import math
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Dict, Optional, Tuple

from scipy.special import expit

from utils.errors import AllZero, SignViolation


class Label(str, Enum):
    POS = "pos"
    NEG = "neg"


class ScoreKind(str, Enum):
    RAW_LOGITS = "raw_logits"
    PROBABILITY = "probability"


class Scale(str, Enum):
    ME = "ME"
    S100 = "S100"


class Scenario(str, Enum):
    TP = "TP"
    TN = "TN"
    FP = "FP"
    FN = "FN"
    REJ = "REJ"


class Stance(str, Enum):
    AGREE = "agree"
    NEUTRAL = "neutral"
    DISAGREE = "disagree"


class Judgment(str, Enum):
    HATEFUL = "hateful"
    NOT_HATEFUL = "not_hateful"


@dataclass(frozen=True)
class PredictionRecord:
    """
    One classifier output on one item.

    scores holds (logit_neg, logit_pos) for raw_logits records and (p_pos,)
    for probability records.
    """
    model_id: str
    item_id: str
    score_kind: ScoreKind
    scores: Tuple[float, ...]
    true_label: Label

    @property
    def p_pos(self) -> float:
        if self.score_kind == ScoreKind.PROBABILITY:
            return self.scores[0]
        logit_neg, logit_pos = self.scores
        return float(expit(logit_pos - logit_neg))

    @property
    def predicted_label(self) -> Label:
        # ties go to pos
        if self.score_kind == ScoreKind.PROBABILITY:
            return Label.POS if self.scores[0] >= 0.5 else Label.NEG
        logit_neg, logit_pos = self.scores
        return Label.POS if logit_pos >= logit_neg else Label.NEG

    @property
    def confidence(self) -> float:
        p = self.p_pos
        return max(p, 1.0 - p)

    @property
    def is_correct(self) -> bool:
        return self.predicted_label == self.true_label


@dataclass(frozen=True)
class ValueModel:
    """Perceived value of the five decision scenarios"""
    v_tp: float
    v_tn: float
    v_fp: float
    v_fn: float
    v_r: float

    def __post_init__(self):
        for name in ("v_tp", "v_tn", "v_fp", "v_fn", "v_r"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise SignViolation(name, value)
        for name in ("v_tp", "v_tn"):
            if getattr(self, name) < 0:
                raise SignViolation(name, getattr(self, name))
        for name in ("v_fp", "v_fn", "v_r"):
            if getattr(self, name) > 0:
                raise SignViolation(name, getattr(self, name))
        if all(v == 0 for v in asdict(self).values()):
            raise AllZero()

    def correct_value(self, label: Label) -> float:
        return self.v_tp if label == Label.POS else self.v_tn

    def incorrect_value(self, label: Label) -> float:
        """Value of a wrong decision that predicted `label`"""
        return self.v_fp if label == Label.POS else self.v_fn

    def scaled(self, factor: float) -> "ValueModel":
        return ValueModel(*(factor * v for v in self.as_tuple()))

    def with_zero_correct(self) -> "ValueModel":
        return ValueModel(0.0, 0.0, self.v_fp, self.v_fn, self.v_r)

    def as_tuple(self) -> Tuple[float, float, float, float, float]:
        return (self.v_tp, self.v_tn, self.v_fp, self.v_fn, self.v_r)

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class SurveyResponse:
    """One participant's judgment of one scenario question"""
    participant_id: str
    scale: Scale
    question_id: str
    scenario: Scenario
    hateful_judgment: Judgment
    stance: Stance
    magnitude: Optional[float]
    excluded: bool = False
    group: Optional[str] = None


@dataclass(frozen=True)
class Document:
    doc_id: str
    text: str
    strata: Dict[str, str] = field(default_factory=dict)
