"""
Latent semantic embeddings for short documents
TF-IDF weighting followed by a randomized truncated SVD
"""

import logging
import re
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy import sparse
from sklearn.feature_extraction.text import TfidfVectorizer
from sklearn.utils.extmath import randomized_svd

from config import DEFAULT_SEED, SVD_MAX_RANK, SVD_OVERSAMPLES, SVD_POWER_ITERATIONS, TOKEN_PATTERN
from ingestion.records import Document
from utils.errors import EmptyCorpus, EmptyDocument, RankTooLarge

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(TOKEN_PATTERN)


def tokenize(text: str) -> List[str]:
    """Lowercase alphanumeric runs of length >= 2; no stemming"""
    return _TOKEN_RE.findall(text.lower())


@dataclass
class TermMatrix:
    doc_ids: List[str]
    terms: List[str]
    weights: sparse.csr_matrix


@dataclass
class EmbeddingMatrix:
    doc_ids: List[str]
    vectors: np.ndarray
    singular_values: np.ndarray
    left_vectors: np.ndarray
    components: np.ndarray

    @property
    def rank(self) -> int:
        return self.vectors.shape[1]


def tfidf(documents: Sequence[Document]) -> TermMatrix:
    """
    tf = raw term count, idf = ln((1 + N) / (1 + df)) + 1, rows L2-normalized
    """
    if len(documents) < 2:
        raise EmptyCorpus(len(documents))
    for doc in documents:
        if not tokenize(doc.text):
            raise EmptyDocument(doc.doc_id)

    vectorizer = TfidfVectorizer(
        lowercase=True,
        token_pattern=TOKEN_PATTERN,
        norm="l2",
        use_idf=True,
        smooth_idf=True,
        sublinear_tf=False,
    )
    weights = vectorizer.fit_transform([doc.text for doc in documents])
    return TermMatrix(
        doc_ids=[doc.doc_id for doc in documents],
        terms=list(vectorizer.get_feature_names_out()),
        weights=weights.tocsr(),
    )


def truncated_svd(matrix, rank: int, seed: int = DEFAULT_SEED,
                  doc_ids: Optional[Sequence[str]] = None) -> EmbeddingMatrix:
    """
    Top-`rank` left singular vectors scaled by their singular values
    """
    rows, cols = matrix.shape
    limit = min(rows, cols)
    if not 1 <= rank <= limit:
        raise RankTooLarge(rank, limit)

    u, s, vt = randomized_svd(
        matrix,
        n_components=rank,
        n_oversamples=SVD_OVERSAMPLES,
        n_iter=SVD_POWER_ITERATIONS,
        random_state=seed,
    )
    vectors = u * s
    return EmbeddingMatrix(
        doc_ids=list(doc_ids) if doc_ids is not None else [str(i) for i in range(rows)],
        vectors=vectors,
        singular_values=s,
        left_vectors=u,
        components=vt,
    )


class LsaEmbedder:
    """Embed a set of documents into a shared LSA space"""

    def __init__(self, rank: Optional[int] = None, seed: int = DEFAULT_SEED):
        self.rank = rank
        self.seed = seed

    def default_rank(self, terms: TermMatrix) -> int:
        n_docs, n_terms = terms.weights.shape
        return max(1, min(SVD_MAX_RANK, n_terms, n_docs - 1))

    def embed(self, documents: Sequence[Document]) -> EmbeddingMatrix:
        terms = tfidf(documents)
        rank = self.rank if self.rank is not None else self.default_rank(terms)
        rank = min(rank, min(terms.weights.shape))
        embedding = truncated_svd(terms.weights, rank, seed=self.seed, doc_ids=terms.doc_ids)
        logger.debug(f"🧮 Embedded {len(documents)} documents, "
                     f"{len(terms.terms)} terms -> rank {rank}")
        return embedding
