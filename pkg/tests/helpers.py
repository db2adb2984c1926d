"""Record builders shared by the test modules"""

from pathlib import Path
from typing import Iterable, Optional

from ingestion.records import (
    Document,
    Judgment,
    Label,
    PredictionRecord,
    Scale,
    Scenario,
    ScoreKind,
    Stance,
    SurveyResponse,
)


def prob_record(item_id: str, p_pos: float, true_label: Label, model_id: str = "m1") -> PredictionRecord:
    return PredictionRecord(model_id, item_id, ScoreKind.PROBABILITY, (p_pos,), true_label)


def logit_record(item_id: str, logit_neg: float, logit_pos: float, true_label: Label,
                 model_id: str = "m1") -> PredictionRecord:
    return PredictionRecord(model_id, item_id, ScoreKind.RAW_LOGITS, (logit_neg, logit_pos), true_label)


def positive_prediction(item_id: str, confidence: float, correct: bool, model_id: str = "m1") -> PredictionRecord:
    """Predicted pos with exactly this confidence"""
    return prob_record(item_id, confidence, Label.POS if correct else Label.NEG, model_id)


def answer(participant: str, question: str, scenario: Scenario, value: Optional[float],
           scale: Scale = Scale.ME, excluded: bool = False, group: Optional[str] = None) -> SurveyResponse:
    """A survey answer from a signed value; 0 or None is neutral"""
    if not value:
        stance, magnitude = Stance.NEUTRAL, None
    elif value > 0:
        stance, magnitude = Stance.AGREE, float(value)
    else:
        stance, magnitude = Stance.DISAGREE, float(-value)
    return SurveyResponse(
        participant_id=participant,
        scale=scale,
        question_id=question,
        scenario=scenario,
        hateful_judgment=Judgment.HATEFUL,
        stance=stance,
        magnitude=magnitude,
        excluded=excluded,
        group=group,
    )


def doc(doc_id: str, text: str, **strata: str) -> Document:
    return Document(doc_id=doc_id, text=text, strata=dict(strata))


def write_lines(path: Path, lines: Iterable[str]) -> Path:
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
