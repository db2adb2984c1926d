"""
k-means (k-means++ seeding, Lloyd iterations) and silhouette-based choice of k
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from sklearn.cluster import kmeans_plusplus
from sklearn.metrics import silhouette_score

from config import DEFAULT_SEED, K_MAX, K_MIN, KMEANS_MAX_ITER
from utils.errors import ObjectiveIncreased, SingleCluster, TooFewPoints

logger = logging.getLogger(__name__)


@dataclass
class KMeansResult:
    assignments: np.ndarray
    centroids: np.ndarray
    objective: float
    history: List[float] = field(default_factory=list)
    iterations: int = 0
    reseeds: int = 0

    @property
    def k(self) -> int:
        return self.centroids.shape[0]


def _squared_distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centroids[None, :, :]
    return np.einsum("nkd,nkd->nk", diff, diff)


def _reseed_empty(points: np.ndarray, centroids: np.ndarray, assignments: np.ndarray,
                  distances: np.ndarray) -> int:
    """Move each empty centroid onto the point farthest from its own centroid"""
    k = centroids.shape[0]
    counts = np.bincount(assignments, minlength=k)
    reseeds = 0
    for j in np.flatnonzero(counts == 0):
        cost = distances[np.arange(len(points)), assignments].copy()
        cost[counts[assignments] <= 1] = -1.0
        i = int(np.argmax(cost))
        counts[assignments[i]] -= 1
        assignments[i] = j
        counts[j] = 1
        centroids[j] = points[i]
        distances[:, j] = np.sum((points - points[i]) ** 2, axis=1)
        reseeds += 1
    return reseeds


def kmeans(points: np.ndarray, k: int, seed: int = DEFAULT_SEED,
           init: Optional[np.ndarray] = None, max_iter: int = KMEANS_MAX_ITER) -> KMeansResult:
    """
    Lloyd's algorithm until the assignment stops changing or max_iter.

    The objective is checked after every update; a rise beyond rounding
    raises ObjectiveIncreased.
    """
    points = np.asarray(points, dtype=float)
    n = len(points)
    if k < 1 or k > n:
        raise TooFewPoints(k, n)

    if init is None:
        centroids, _ = kmeans_plusplus(points, n_clusters=k, random_state=seed)
    else:
        centroids = np.array(init, dtype=float)
        if centroids.shape != (k, points.shape[1]):
            raise ValueError(f"init must have shape ({k}, {points.shape[1]})")
    centroids = centroids.copy()

    assignments: Optional[np.ndarray] = None
    history: List[float] = []
    reseeds = 0
    iterations = 0
    for iterations in range(1, max_iter + 1):
        distances = _squared_distances(points, centroids)
        new = np.argmin(distances, axis=1)
        reseeds += _reseed_empty(points, centroids, new, distances)
        if assignments is not None and np.array_equal(new, assignments):
            break
        assignments = new

        for j in range(k):
            centroids[j] = points[assignments == j].mean(axis=0)
        objective = float(np.sum((points - centroids[assignments]) ** 2))
        if history and objective > history[-1] + 1e-9 * max(1.0, history[-1]):
            raise ObjectiveIncreased(iterations, history[-1], objective)
        history.append(objective)

    return KMeansResult(
        assignments=assignments,
        centroids=centroids,
        objective=history[-1],
        history=history,
        iterations=iterations,
        reseeds=reseeds,
    )


def silhouette(points: np.ndarray, assignments: np.ndarray) -> float:
    """Mean silhouette; singleton clusters contribute 0"""
    labels = np.asarray(assignments)
    n_labels = len(np.unique(labels))
    if n_labels < 2:
        raise SingleCluster()
    if n_labels == len(labels):
        return 0.0
    return float(silhouette_score(np.asarray(points, dtype=float), labels, metric="euclidean"))


def choose_k(points: np.ndarray, k_min: int = K_MIN, k_max: int = K_MAX,
             seed: int = DEFAULT_SEED) -> Tuple[int, Dict[int, float], Dict[int, KMeansResult]]:
    """
    k in [k_min, k_max] with the highest mean silhouette; ties go to the smaller k.

    k_max is clipped to n - 1 since silhouette needs a non-singleton cluster.
    """
    n = len(points)
    upper = min(k_max, n - 1)
    if k_min > upper:
        raise TooFewPoints(k_min, n)

    scores: Dict[int, float] = {}
    fits: Dict[int, KMeansResult] = {}
    for k in range(k_min, upper + 1):
        fit = kmeans(points, k, seed=seed)
        fits[k] = fit
        scores[k] = silhouette(points, fit.assignments)

    best = max(scores, key=lambda k: (scores[k], -k))
    logger.debug(f"🔎 Silhouette picked k={best} ({scores[best]:.3f}) from [{k_min}, {upper}]")
    return best, scores, fits
