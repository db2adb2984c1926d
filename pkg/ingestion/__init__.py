"""
Input parsing and validation: predictions, survey responses, value models, corpora
"""

from .records import (
    Document,
    Judgment,
    Label,
    PredictionRecord,
    Scale,
    Scenario,
    ScoreKind,
    Stance,
    SurveyResponse,
    ValueModel,
)

__all__ = [
    "Document",
    "Judgment",
    "Label",
    "PredictionRecord",
    "Scale",
    "Scenario",
    "ScoreKind",
    "Stance",
    "SurveyResponse",
    "ValueModel",
]
