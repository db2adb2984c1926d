"""
Representative document selection per stratum

Each stratum is embedded on its own, clustered, and the document nearest
to every centroid is emitted. Distance ties go to the smallest doc_id.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config import DEFAULT_SEED, TOKEN_PATTERN
from embeddings.lsa_embedder import LsaEmbedder
from ingestion.corpus import StratumPlan
from ingestion.records import Document
from sampling.clustering import KMeansResult, choose_k, kmeans
from utils.errors import StratumTooSmall

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Selection:
    stratum: str
    cluster: int
    doc_id: str


@dataclass
class StratumSummary:
    name: str
    n_documents: int
    n_excluded: int
    k: int
    pinned: bool
    rank: Optional[int] = None
    silhouette: Dict[int, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "n_documents": self.n_documents,
            "n_excluded": self.n_excluded,
            "k": self.k,
            "k_pinned": self.pinned,
            "svd_rank": self.rank,
            "silhouette": {str(k): s for k, s in sorted(self.silhouette.items())},
        }


@dataclass
class SelectionResult:
    selections: List[Selection]
    strata: List[StratumSummary]
    seed: int
    exclude_pattern: Optional[str] = None

    @property
    def doc_ids(self) -> List[str]:
        return [s.doc_id for s in self.selections]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [(s.stratum, s.cluster, s.doc_id) for s in self.selections],
            columns=["stratum", "cluster", "doc_id"],
        )

    def metadata(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "tokenizer": {"pattern": TOKEN_PATTERN, "lowercase": True, "stemming": False},
            "exclude_pattern": self.exclude_pattern,
            "strata": [s.to_dict() for s in self.strata],
        }


def nearest_to_centroids(doc_ids: Sequence[str], points: np.ndarray, fit: KMeansResult) -> List[str]:
    """Per cluster, the member nearest its centroid (ties by doc_id)"""
    chosen = []
    for j in range(fit.k):
        members = np.flatnonzero(fit.assignments == j)
        distances = np.sum((points[members] - fit.centroids[j]) ** 2, axis=1)
        best = min(range(len(members)), key=lambda m: (distances[m], doc_ids[members[m]]))
        chosen.append(doc_ids[members[best]])
    return chosen


def _stratum_documents(documents: Sequence[Document], plan: StratumPlan,
                       exclude: Optional[re.Pattern]) -> Tuple[List[Document], int]:
    matching = [d for d in documents if plan.matches(d)]
    kept = [d for d in matching if exclude is None or not exclude.search(d.text)]
    return sorted(kept, key=lambda d: d.doc_id), len(matching) - len(kept)


def select_stratum(documents: Sequence[Document], plan: StratumPlan, seed: int = DEFAULT_SEED,
                   rank: Optional[int] = None, n_excluded: int = 0) -> Tuple[List[Selection], StratumSummary]:
    n = len(documents)
    needed = plan.clusters if plan.clusters is not None else plan.k_min + 1
    if n < needed:
        raise StratumTooSmall(plan.name, n, needed)

    doc_ids = [d.doc_id for d in documents]
    if plan.clusters == n:
        summary = StratumSummary(plan.name, n, n_excluded, k=n, pinned=True)
        return [Selection(plan.name, i, doc_id) for i, doc_id in enumerate(doc_ids)], summary

    embedding = LsaEmbedder(rank=rank, seed=seed).embed(documents)
    points = embedding.vectors
    if plan.clusters is not None:
        k, scores = plan.clusters, {}
        fit = kmeans(points, k, seed=seed)
    else:
        k, scores, fits = choose_k(points, plan.k_min, plan.k_max, seed=seed)
        fit = fits[k]

    chosen = nearest_to_centroids(doc_ids, points, fit)
    selections = [Selection(plan.name, j, doc_id) for j, doc_id in enumerate(chosen)]
    summary = StratumSummary(plan.name, n, n_excluded, k=k, pinned=plan.clusters is not None,
                             rank=embedding.rank, silhouette=scores)
    return selections, summary


def select_representatives(documents: Sequence[Document],
                           plan: Sequence[StratumPlan],
                           seed: int = DEFAULT_SEED,
                           rank: Optional[int] = None,
                           exclude_pattern: Optional[str] = None) -> SelectionResult:
    exclude = re.compile(exclude_pattern) if exclude_pattern else None

    selections: List[Selection] = []
    summaries: List[StratumSummary] = []
    for stratum in plan:
        docs, n_excluded = _stratum_documents(documents, stratum, exclude)
        chosen, summary = select_stratum(docs, stratum, seed=seed, rank=rank, n_excluded=n_excluded)
        selections.extend(chosen)
        summaries.append(summary)
        logger.info(f"🎯 Stratum {stratum.name}: {len(chosen)} of {len(docs)} documents (k={summary.k})")

    return SelectionResult(selections, summaries, seed, exclude_pattern)
