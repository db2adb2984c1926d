"""
Temperature scaling for binary classifiers

calibrated = softmax(logits / T), with T fitted on a held-out set by
minimizing mean negative log-likelihood over log T in [-4, 4].
Dividing by T > 0 never changes the argmax class.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import List, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import softmax

from config import TEMPERATURE_LOG_BOUND, TEMPERATURE_TOLERANCE
from ingestion.records import Label, PredictionRecord, ScoreKind
from utils.errors import ProbabilityKindUnsupported, SingleClassOnly, TooFewRecords

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CalibrationModel:
    temperature: float
    fit_nll: float
    nll_at_unit_temperature: float = math.nan
    hit_bound: bool = False
    n_records: int = 0


def _require_logits(records: Sequence[PredictionRecord]) -> None:
    for record in records:
        if record.score_kind != ScoreKind.RAW_LOGITS:
            raise ProbabilityKindUnsupported(record.item_id)


def _signed_margins(records: Sequence[PredictionRecord]) -> np.ndarray:
    """(logit_true - logit_other) per record"""
    scores = np.array([r.scores for r in records], dtype=float)
    margins = scores[:, 1] - scores[:, 0]
    signs = np.array([1.0 if r.true_label == Label.POS else -1.0 for r in records])
    return signs * margins


def _nll_from_margins(margins: np.ndarray, temperature: float) -> float:
    # -log sigmoid(m / T)
    return float(np.mean(np.logaddexp(0.0, -margins / temperature)))


def mean_nll(records: Sequence[PredictionRecord], temperature: float) -> float:
    _require_logits(records)
    return _nll_from_margins(_signed_margins(records), temperature)


def fit_temperature(records: Sequence[PredictionRecord],
                    log_bound: float = TEMPERATURE_LOG_BOUND,
                    tolerance: float = TEMPERATURE_TOLERANCE) -> CalibrationModel:
    """
    Fit T by bounded 1-D minimization of mean NLL over log T.

    The NLL is unimodal in log T, so the bounded golden-section/parabolic
    search converges to the global minimum inside the bounds.
    """
    if len(records) < 2:
        raise TooFewRecords(len(records), 2)
    _require_logits(records)

    labels = {r.true_label for r in records}
    if len(labels) < 2:
        raise SingleClassOnly(next(iter(labels)).value)

    margins = _signed_margins(records)
    nll_unit = _nll_from_margins(margins, 1.0)

    result = minimize_scalar(
        lambda log_t: _nll_from_margins(margins, math.exp(log_t)),
        bounds=(-log_bound, log_bound),
        method="bounded",
        options={"xatol": tolerance},
    )
    log_t = float(result.x)
    fit_nll = float(result.fun)

    if fit_nll > nll_unit:
        log_t, fit_nll = 0.0, nll_unit

    hit_bound = abs(abs(log_t) - log_bound) < 1e-3
    if hit_bound:
        logger.warning(f"⚠️  Temperature search stopped at its bound (T={math.exp(log_t):.4g})")

    model = CalibrationModel(
        temperature=math.exp(log_t),
        fit_nll=fit_nll,
        nll_at_unit_temperature=nll_unit,
        hit_bound=hit_bound,
        n_records=len(records),
    )
    logger.info(f"🌡️  Fitted T={model.temperature:.4f} (NLL {nll_unit:.4f} -> {fit_nll:.4f})")
    return model


def apply_temperature(record: PredictionRecord, model: CalibrationModel) -> Tuple[float, float]:
    """Calibrated (c_neg, c_pos) for one raw-logit record"""
    if record.score_kind != ScoreKind.RAW_LOGITS:
        raise ProbabilityKindUnsupported(record.item_id)
    c_neg, c_pos = softmax(np.asarray(record.scores, dtype=float) / model.temperature)
    return float(c_neg), float(c_pos)


def calibrate_records(records: Sequence[PredictionRecord], model: CalibrationModel) -> List[PredictionRecord]:
    """Records whose logits are divided by T; confidences become calibrated"""
    _require_logits(records)
    t = model.temperature
    return [replace(r, scores=(r.scores[0] / t, r.scores[1] / t)) for r in records]
