"""
Krippendorff's alpha for inter-rater reliability

alpha = 1 - D_o / D_e, computed from the coincidence matrix of pairable
values: o[c, k] sums 1 / (m_u - 1) over every ordered pair of ratings
(c, k) inside a unit u with m_u ratings.
"""

from enum import Enum
from typing import Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from config import ALPHA_RELIABLE, ALPHA_TENTATIVE
from analysis.normalization import NormalizedResponse
from utils.errors import InsufficientData, ZeroExpectedDisagreement


class DistanceMetric(str, Enum):
    NOMINAL = "nominal"
    ORDINAL = "ordinal"
    INTERVAL = "interval"
    RATIO = "ratio"


def _delta_squared(values: np.ndarray, totals: np.ndarray, metric: DistanceMetric) -> np.ndarray:
    c = values[:, None]
    k = values[None, :]
    if metric == DistanceMetric.NOMINAL:
        return (c != k).astype(float)
    if metric == DistanceMetric.INTERVAL:
        return (c - k) ** 2
    if metric == DistanceMetric.RATIO:
        s = c + k
        with np.errstate(divide="ignore", invalid="ignore"):
            d = np.where(s == 0, 0.0, ((c - k) / s) ** 2)
        return d

    # ordinal: sum of value frequencies between c and k, less half of each end
    cumulative = np.concatenate(([0.0], np.cumsum(totals)))
    lo = np.minimum(np.arange(len(values))[:, None], np.arange(len(values))[None, :])
    hi = np.maximum(np.arange(len(values))[:, None], np.arange(len(values))[None, :])
    between = cumulative[hi + 1] - cumulative[lo]
    return (between - (totals[lo] + totals[hi]) / 2.0) ** 2


def coincidence_matrix(ratings: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    (values, o) for a raters x units matrix with NaN for missing ratings.

    Units with fewer than two ratings are not pairable and are dropped.
    """
    units = np.asarray(ratings, dtype=float).T
    present = ~np.isnan(units)
    pairable = present.sum(axis=1) >= 2
    units = units[pairable]
    present = present[pairable]

    values = np.unique(units[present])
    counts = np.zeros((len(units), len(values)))
    for u in range(len(units)):
        np.add.at(counts[u], np.searchsorted(values, units[u][present[u]]), 1.0)

    m = counts.sum(axis=1)
    weighted = counts / (m - 1.0)[:, None]
    o = weighted.T @ counts - np.diag(weighted.sum(axis=0))
    return values, o


def krippendorff_alpha(ratings: Union[np.ndarray, pd.DataFrame],
                       metric: Union[str, DistanceMetric] = DistanceMetric.INTERVAL) -> float:
    """
    Alpha over a raters x units matrix (rows raters, columns units, NaN missing)
    """
    metric = DistanceMetric(metric)
    matrix = np.asarray(ratings, dtype=float)
    if matrix.ndim != 2:
        raise InsufficientData("ratings must be a 2-D raters x units matrix")

    pairable_units = int((np.sum(~np.isnan(matrix), axis=0) >= 2).sum())
    if pairable_units < 2:
        raise InsufficientData()

    values, o = coincidence_matrix(matrix)
    totals = o.sum(axis=1)
    n = totals.sum()
    delta = _delta_squared(values, totals, metric)

    expected = float((np.outer(totals, totals) * delta).sum())
    if expected == 0.0:
        raise ZeroExpectedDisagreement()
    observed = float((o * delta).sum())
    return 1.0 - (n - 1.0) * observed / expected


def interpret_alpha(alpha: Optional[float]) -> str:
    if alpha is None:
        return "undefined"
    if alpha >= ALPHA_RELIABLE:
        return "reliable"
    if alpha >= ALPHA_TENTATIVE:
        return "tentative"
    return "unreliable"


def ratings_matrix(normalized: Sequence[NormalizedResponse],
                   questions: Optional[Sequence[str]] = None) -> pd.DataFrame:
    """Participants x questions matrix of signed values, NaN where unanswered"""
    frame = pd.DataFrame(
        [(r.participant_id, r.question_id, r.signed_value) for r in normalized],
        columns=["participant_id", "question_id", "signed_value"],
    )
    matrix = frame.pivot(index="participant_id", columns="question_id", values="signed_value")
    matrix = matrix.sort_index()
    if questions is not None:
        matrix = matrix.reindex(columns=list(questions))
    else:
        matrix = matrix.reindex(columns=sorted(matrix.columns))
    return matrix.astype(float)
