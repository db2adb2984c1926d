"""
Signed scenario ratings and per-participant magnitude-estimation normalization
"""

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ingestion.records import Scale, Scenario, Stance, SurveyResponse
from ingestion.survey import active_responses
from utils.errors import MixedParticipants

NORMALIZED_MAX = 100.0


@dataclass(frozen=True)
class NormalizedResponse:
    participant_id: str
    question_id: str
    scenario: Scenario
    signed_value: float
    scale: Scale = Scale.ME
    group: Optional[str] = None


def signed_value(stance: Stance, magnitude: Optional[float]) -> float:
    if stance == Stance.AGREE:
        return float(magnitude)
    if stance == Stance.DISAGREE:
        return -float(magnitude)
    return 0.0


def normalize_signed(values: Sequence[float]) -> List[float]:
    """
    Scale values so the largest |value| becomes 100.

    All-zero input is returned as zeros; input already peaking at 100 is
    returned unchanged.
    """
    peak = max((abs(v) for v in values), default=0.0)
    if peak == 0.0:
        return [0.0 for _ in values]
    if peak == NORMALIZED_MAX:
        return [float(v) for v in values]

    normalized = []
    for v in values:
        if abs(v) == peak:
            normalized.append(NORMALIZED_MAX if v > 0 else -NORMALIZED_MAX)
        else:
            normalized.append(v / peak * NORMALIZED_MAX)
    return normalized


def _to_normalized(response: SurveyResponse, value: float) -> NormalizedResponse:
    return NormalizedResponse(
        participant_id=response.participant_id,
        question_id=response.question_id,
        scenario=response.scenario,
        signed_value=value,
        scale=response.scale,
        group=response.group,
    )


def normalize_me(responses: Sequence[SurveyResponse]) -> List[NormalizedResponse]:
    """Normalize one participant's magnitude estimates to [-100, 100]"""
    keys = {(r.participant_id, r.scale) for r in responses}
    if len(keys) > 1 or any(scale != Scale.ME for _, scale in keys):
        raise MixedParticipants()

    signed = [signed_value(r.stance, r.magnitude) for r in responses]
    return [_to_normalized(r, v) for r, v in zip(responses, normalize_signed(signed))]


def normalize_responses(responses: Iterable[SurveyResponse]) -> List[NormalizedResponse]:
    """
    Drop excluded rows, normalize ME answers per participant and convert
    S100 answers to signed values without rescaling.
    """
    by_participant: Dict[Tuple[str, Scale], List[SurveyResponse]] = defaultdict(list)
    for response in active_responses(responses):
        by_participant[(response.participant_id, response.scale)].append(response)

    normalized: List[NormalizedResponse] = []
    for (_, scale), answers in sorted(by_participant.items(), key=lambda kv: (kv[0][0], kv[0][1].value)):
        if scale == Scale.ME:
            normalized.extend(normalize_me(answers))
        else:
            normalized.extend(_to_normalized(r, signed_value(r.stance, r.magnitude)) for r in answers)
    return normalized
