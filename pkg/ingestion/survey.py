"""
Survey response ingestion.

survey.csv columns: participant_id, scale, question_id, scenario,
hateful_judgment, stance, magnitude, excluded  (+ optional group)

Rows flagged excluded (failed attention or warm-up checks) are kept in the
returned list; statistics drop them through active_responses().
"""

import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Set, Tuple

import pandas as pd

from ingestion.records import Judgment, Scale, Scenario, Stance, SurveyResponse
from ingestion.tables import format_float, parse_bool, parse_enum, parse_float, read_csv_rows
from utils.errors import DuplicateKey, MagnitudeMissingForNonNeutral, MagnitudePresentForNeutral, MalformedRow

logger = logging.getLogger(__name__)

SURVEY_COLUMNS = (
    "participant_id", "scale", "question_id", "scenario",
    "hateful_judgment", "stance", "magnitude", "excluded",
)
OPTIONAL_COLUMNS = ("group",)

S100_MIN = 1.0
S100_MAX = 100.0


def _build_response(row: Dict[str, str], line: int, source: str) -> SurveyResponse:
    if not row["participant_id"] or not row["question_id"]:
        raise MalformedRow(line, "participant_id and question_id are required", source=source)

    scale = parse_enum(Scale, row["scale"], line, "scale", source)
    scenario = parse_enum(Scenario, row["scenario"], line, "scenario", source)
    judgment = parse_enum(Judgment, row["hateful_judgment"], line, "hateful_judgment", source)
    stance = parse_enum(Stance, row["stance"], line, "stance", source)
    excluded = parse_bool(row["excluded"], line, "excluded", source)

    magnitude: Optional[float] = None
    if stance == Stance.NEUTRAL:
        if row["magnitude"] != "":
            raise MagnitudePresentForNeutral(line)
    else:
        if row["magnitude"] == "":
            raise MagnitudeMissingForNonNeutral(line)
        magnitude = parse_float(row["magnitude"], line, "magnitude", source)
        if magnitude <= 0:
            raise MalformedRow(line, f"magnitude must be positive, got {magnitude}", source=source)
        if scale == Scale.S100 and not S100_MIN <= magnitude <= S100_MAX:
            raise MalformedRow(line, f"S100 magnitude must lie in [1, 100], got {magnitude}", source=source)

    return SurveyResponse(
        participant_id=row["participant_id"],
        scale=scale,
        question_id=row["question_id"],
        scenario=scenario,
        hateful_judgment=judgment,
        stance=stance,
        magnitude=magnitude,
        excluded=excluded,
        group=row.get("group") or None,
    )


def parse_survey(path) -> List[SurveyResponse]:
    path = Path(path)
    responses = []
    seen: Set[Tuple[str, str, str]] = set()
    for line, row in read_csv_rows(path, SURVEY_COLUMNS, OPTIONAL_COLUMNS):
        response = _build_response(row, line, path.name)
        key = (response.participant_id, response.scale.value, response.question_id)
        if key in seen:
            raise DuplicateKey(key, line)
        seen.add(key)
        responses.append(response)

    flagged = sum(1 for r in responses if r.excluded)
    logger.info(f"📥 Parsed {len(responses)} survey responses ({flagged} flagged as excluded)")
    return responses


def active_responses(responses: Iterable[SurveyResponse]) -> List[SurveyResponse]:
    """Responses from participants with no row flagged as excluded"""
    responses = list(responses)
    flagged = {r.participant_id for r in responses if r.excluded}
    return [r for r in responses if r.participant_id not in flagged]


def write_survey(responses: Iterable[SurveyResponse], path) -> None:
    responses = list(responses)
    with_group = any(r.group is not None for r in responses)
    columns = list(SURVEY_COLUMNS) + (["group"] if with_group else [])

    rows = []
    for r in responses:
        row = {
            "participant_id": r.participant_id,
            "scale": r.scale.value,
            "question_id": r.question_id,
            "scenario": r.scenario.value,
            "hateful_judgment": r.hateful_judgment.value,
            "stance": r.stance.value,
            "magnitude": format_float(r.magnitude),
            "excluded": "true" if r.excluded else "false",
        }
        if with_group:
            row["group"] = r.group or ""
        rows.append(row)

    pd.DataFrame(rows, columns=columns).to_csv(path, index=False, lineterminator="\n")
