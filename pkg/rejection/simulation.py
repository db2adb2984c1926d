"""
Synthetic output of a perfectly calibrated binary classifier

Confidences are laid out on `levels` evenly spaced points of [0.5, 1); at
each level exactly round(m * c) of the m records are correct, so the
empirical accuracy of every level matches its confidence without
sampling noise. The seed only decides labels and which records carry noise.
"""

import math
from typing import List

import numpy as np

from config import DEFAULT_SEED
from ingestion.records import Label, PredictionRecord, ScoreKind


def simulate_calibrated_records(n: int,
                                seed: int = DEFAULT_SEED,
                                label_noise: float = 0.0,
                                positive_rate: float = 0.5,
                                levels: int = 2000,
                                model_id: str = "simulated") -> List[PredictionRecord]:
    """
    Raw-logit records whose confidence equals the probability of being correct.

    label_noise flips the true label of that fraction of records after the
    calibrated construction, leaving the model overconfident.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0.0 <= label_noise <= 1.0 or not 0.0 <= positive_rate <= 1.0:
        raise ValueError("label_noise and positive_rate must lie in [0, 1]")

    rng = np.random.default_rng(seed)
    levels = max(1, min(levels, n))
    per_level = np.full(levels, n // levels)
    per_level[: n % levels] += 1

    confidence = np.empty(n)
    correct = np.zeros(n, dtype=bool)
    start = 0
    for k, m in enumerate(per_level):
        c = 0.5 + 0.5 * (k + 0.5) / levels
        confidence[start:start + m] = c
        correct[start:start + int(round(m * c))] = True
        start += m

    true_pos = rng.random(n) < positive_rate
    predicted_pos = np.where(correct, true_pos, ~true_pos)

    flips = int(round(label_noise * n))
    if flips:
        flipped = rng.choice(n, size=flips, replace=False)
        true_pos[flipped] = ~true_pos[flipped]

    records = []
    for i in range(n):
        c = confidence[i]
        margin = math.log(c / (1.0 - c))
        records.append(PredictionRecord(
            model_id=model_id,
            item_id=f"item{i:06d}",
            score_kind=ScoreKind.RAW_LOGITS,
            scores=(0.0, margin if predicted_pos[i] else -margin),
            true_label=Label.POS if true_pos[i] else Label.NEG,
        ))
    return records
