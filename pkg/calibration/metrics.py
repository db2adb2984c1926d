# calibration/metrics.py

from typing import Sequence

import numpy as np

from config import ECE_BINS
from ingestion.records import PredictionRecord
from utils.errors import BadBinCount, EmptyInput


def expected_calibration_error(records: Sequence[PredictionRecord], bins: int = ECE_BINS) -> float:
    """
    ECE = sum over bins of (|bin| / N) * |bin accuracy - bin mean confidence|

    Bins are equal-width over [0.5, 1]; confidence 1.0 falls in the last bin.
    """
    if bins < 1:
        raise BadBinCount(bins)
    if not records:
        raise EmptyInput("records")

    confidence = np.array([r.confidence for r in records], dtype=float)
    correct = np.array([r.is_correct for r in records], dtype=float)

    index = np.floor((confidence - 0.5) / 0.5 * bins).astype(int)
    index = np.clip(index, 0, bins - 1)

    total = len(records)
    ece = 0.0
    for b in range(bins):
        mask = index == b
        count = int(mask.sum())
        if count == 0:
            continue
        gap = abs(correct[mask].mean() - confidence[mask].mean())
        ece += count / total * gap
    return float(ece)
