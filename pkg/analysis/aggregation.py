"""
Scenario values from normalized survey answers

A question's value is the median of its answers; a scenario's value is the
mean of its question medians. Reliability is reported next to each value.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from analysis.normalization import NormalizedResponse
from analysis.reliability import DistanceMetric, interpret_alpha, krippendorff_alpha, ratings_matrix
from ingestion.records import Scale, Scenario
from utils.errors import EmptyQuestion, QuestionScenarioConflict, ValueRejectError

logger = logging.getLogger(__name__)

SCENARIOS = (Scenario.TP, Scenario.TN, Scenario.FP, Scenario.FN, Scenario.REJ)


def question_scenarios(normalized: Sequence[NormalizedResponse]) -> Dict[str, Scenario]:
    mapping: Dict[str, Scenario] = {}
    for r in normalized:
        known = mapping.setdefault(r.question_id, r.scenario)
        if known != r.scenario:
            raise QuestionScenarioConflict(r.question_id)
    return mapping


def _filter_scale(normalized: Sequence[NormalizedResponse], scale: Optional[Scale]) -> List[NormalizedResponse]:
    if scale is None:
        return list(normalized)
    return [r for r in normalized if r.scale == scale]


def question_medians(normalized: Sequence[NormalizedResponse],
                     questions: Optional[Sequence[str]] = None) -> Dict[str, float]:
    """Median answer per question; an even count takes the mean of the two central values"""
    answers: Dict[str, List[float]] = defaultdict(list)
    for r in normalized:
        answers[r.question_id].append(r.signed_value)

    wanted = sorted(answers) if questions is None else list(questions)
    medians = {}
    for qid in wanted:
        if not answers.get(qid):
            raise EmptyQuestion(qid)
        medians[qid] = float(np.median(answers[qid]))
    return medians


def scenario_values(normalized: Sequence[NormalizedResponse],
                    scale: Optional[Scale] = None,
                    questions: Optional[Sequence[str]] = None) -> Dict[Scenario, float]:
    """Mean of the question medians within each scenario"""
    selected = _filter_scale(normalized, scale)
    mapping = question_scenarios(selected)
    if questions is not None:
        missing = [q for q in questions if q not in mapping]
        if missing:
            raise EmptyQuestion(missing[0])
    medians = question_medians(selected, questions)

    values: Dict[Scenario, float] = {}
    for scenario in SCENARIOS:
        in_scenario = [medians[q] for q in sorted(medians) if mapping[q] == scenario]
        if in_scenario:
            values[scenario] = float(np.mean(in_scenario))
    return values


@dataclass
class ScenarioValueTable:
    scale: Optional[Scale]
    values: Dict[Scenario, float]
    alphas: Dict[Scenario, Optional[float]]
    overall_alpha: Optional[float]
    medians: Dict[str, float]
    scenarios: Dict[str, Scenario]
    n_participants: int = 0
    metric: DistanceMetric = DistanceMetric.INTERVAL
    warnings: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scale": self.scale.value if self.scale else None,
            "metric": self.metric.value,
            "n_participants": self.n_participants,
            "scenarios": {
                s.value: {
                    "value": self.values[s],
                    "alpha": self.alphas.get(s),
                    "interpretation": interpret_alpha(self.alphas.get(s)),
                    "questions": sorted(q for q, sc in self.scenarios.items() if sc == s),
                }
                for s in SCENARIOS if s in self.values
            },
            "overall_alpha": self.overall_alpha,
            "overall_interpretation": interpret_alpha(self.overall_alpha),
            "question_medians": {q: self.medians[q] for q in sorted(self.medians)},
            "warnings": list(self.warnings),
        }

    def to_frame(self) -> pd.DataFrame:
        rows = [{
            "scale": self.scale.value if self.scale else "",
            "scenario": s.value,
            "value": self.values[s],
            "alpha": self.alphas.get(s),
            "interpretation": interpret_alpha(self.alphas.get(s)),
        } for s in SCENARIOS if s in self.values]
        return pd.DataFrame(rows)


def _safe_alpha(matrix: pd.DataFrame, metric: DistanceMetric, label: str, warnings: List[str]) -> Optional[float]:
    try:
        return krippendorff_alpha(matrix, metric)
    except ValueRejectError as e:
        message = f"alpha undefined for {label}: {type(e).__name__}"
        logger.warning(f"⚠️  {message}")
        warnings.append(message)
        return None


def build_scenario_table(normalized: Sequence[NormalizedResponse],
                         scale: Optional[Scale] = None,
                         metric: DistanceMetric = DistanceMetric.INTERVAL) -> ScenarioValueTable:
    """Values, per-scenario alpha and overall alpha for one scale"""
    selected = _filter_scale(normalized, scale)
    if not selected:
        raise EmptyQuestion("*")

    mapping = question_scenarios(selected)
    medians = question_medians(selected)
    values = scenario_values(selected)

    warnings: List[str] = []
    matrix = ratings_matrix(selected, sorted(mapping))
    alphas: Dict[Scenario, Optional[float]] = {}
    for scenario in values:
        columns = [q for q in matrix.columns if mapping[q] == scenario]
        alphas[scenario] = _safe_alpha(matrix[columns], metric, scenario.value, warnings)
    overall = _safe_alpha(matrix, metric, "all questions", warnings)

    table = ScenarioValueTable(
        scale=scale,
        values=values,
        alphas=alphas,
        overall_alpha=overall,
        medians=medians,
        scenarios=mapping,
        n_participants=matrix.shape[0],
        metric=metric,
        warnings=warnings,
    )
    logger.info(f"📊 Scenario values for {scale.value if scale else 'all scales'}: "
                + ", ".join(f"{s.value}={v:.2f}" for s, v in values.items()))
    return table


def scenario_ordering(table: ScenarioValueTable) -> List[Scenario]:
    """Scenarios from least to most valued; ties keep TP, TN, FP, FN, REJ order"""
    return sorted(table.values, key=lambda s: (table.values[s], SCENARIOS.index(s)))
