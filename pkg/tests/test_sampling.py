import math

import numpy as np
import pytest

from embeddings import LsaEmbedder, tfidf, tokenize, truncated_svd
from helpers import doc
from ingestion.corpus import StratumPlan
from sampling import choose_k, kmeans, select_representatives, silhouette
from sampling.representatives import nearest_to_centroids
from utils.errors import (
    EmptyCorpus,
    EmptyDocument,
    RankTooLarge,
    SingleCluster,
    StratumTooSmall,
    TooFewPoints,
)


def blobs(rng, centers, per_blob=50, spread=0.1):
    centers = np.asarray(centers, dtype=float)
    points = np.concatenate([c + rng.normal(0.0, spread, size=(per_blob, centers.shape[1])) for c in centers])
    labels = np.repeat(np.arange(len(centers)), per_blob)
    return points, labels


TRIANGLE = [[0.0, 0.0], [10.0, 0.0], [5.0, 5.0 * math.sqrt(3.0)]]

TOPICS = {
    "food": "pasta tomato basil garlic olive oil dinner recipe kitchen",
    "sport": "football goal match team league striker referee stadium",
    "space": "rocket orbit planet astronaut launch moon galaxy telescope",
}


def topic_corpus(per_topic=6, **strata):
    """Documents over three disjoint vocabularies, near-duplicates within each"""
    rng = np.random.default_rng(0)
    documents = []
    for topic, vocabulary in TOPICS.items():
        words = vocabulary.split()
        for i in range(per_topic):
            text = " ".join(words + list(rng.choice(words, size=3)))
            documents.append(doc(f"{topic}{i:02d}", text, topic=topic, **strata))
    return documents


# ----------------------------------------------------------------------------
# TF-IDF and truncated SVD
# ----------------------------------------------------------------------------

def test_tokenize():
    assert tokenize("Hello, World! a b2 x_y") == ["hello", "world", "b2"]


def test_tfidf_weights():
    documents = [doc("d1", "apple banana cherry"), doc("d2", "Apple banana"), doc("d3", "apple")]
    terms = tfidf(documents)
    assert terms.terms == ["apple", "banana", "cherry"]
    raw = np.array([1.0, math.log(4 / 3) + 1.0, math.log(2.0) + 1.0])
    weights = terms.weights.toarray()
    np.testing.assert_allclose(weights[0], raw / np.linalg.norm(raw), atol=1e-12)
    np.testing.assert_allclose(weights[2], [1.0, 0.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(np.linalg.norm(weights, axis=1), 1.0, atol=1e-12)


def test_tfidf_input_errors():
    with pytest.raises(EmptyCorpus):
        tfidf([doc("d1", "just one document")])
    with pytest.raises(EmptyDocument) as info:
        tfidf([doc("d1", "fine text"), doc("d2", "a ! ?")])
    assert info.value.doc_id == "d2"


def test_truncated_svd_matches_dense_eigensolver():
    rng = np.random.default_rng(42)
    matrix = rng.normal(size=(50, 200))
    embedding = truncated_svd(matrix, 40, seed=0)
    eigenvalues = np.linalg.eigh(matrix @ matrix.T)[0][::-1][:40]
    np.testing.assert_allclose(embedding.singular_values, np.sqrt(eigenvalues), atol=1e-6)
    np.testing.assert_allclose(embedding.vectors, embedding.left_vectors * embedding.singular_values)
    assert embedding.rank == 40
    assert embedding.components.shape == (40, 200)


def test_rank_one_matrix_is_reconstructed():
    rng = np.random.default_rng(3)
    matrix = np.outer(rng.normal(size=12), rng.normal(size=30))
    embedding = truncated_svd(matrix, 1, seed=0)
    reconstruction = embedding.vectors @ embedding.components
    assert np.linalg.norm(reconstruction - matrix) / np.linalg.norm(matrix) < 1e-8


def test_identity_has_unit_singular_values():
    embedding = truncated_svd(np.eye(5), 5, seed=0)
    np.testing.assert_allclose(embedding.singular_values, np.ones(5), atol=1e-10)


def test_embedding_columns_are_orthogonal():
    matrix = np.random.default_rng(4).normal(size=(40, 120))
    embedding = truncated_svd(matrix, 10, seed=0)
    np.testing.assert_allclose(embedding.left_vectors.T @ embedding.left_vectors, np.eye(10), atol=1e-6)
    gram = embedding.vectors.T @ embedding.vectors
    np.testing.assert_allclose(gram - np.diag(np.diag(gram)), 0.0, atol=1e-6 * gram.max())


@pytest.mark.parametrize("rank", [0, 51])
def test_rank_out_of_range(rank):
    with pytest.raises(RankTooLarge):
        truncated_svd(np.ones((50, 200)), rank)


def test_embedding_is_seeded():
    documents = topic_corpus()
    first = LsaEmbedder(rank=5, seed=3).embed(documents)
    second = LsaEmbedder(rank=5, seed=3).embed(documents)
    np.testing.assert_array_equal(first.vectors, second.vectors)
    assert first.doc_ids == [d.doc_id for d in documents]


def test_default_rank_fits_small_corpora():
    documents = [doc("d1", "alpha beta"), doc("d2", "gamma delta"), doc("d3", "alpha gamma")]
    embedding = LsaEmbedder().embed(documents)
    assert embedding.rank == 2


# ----------------------------------------------------------------------------
# k-means and silhouette
# ----------------------------------------------------------------------------

def test_kmeans_recovers_blobs():
    points, labels = blobs(np.random.default_rng(1), TRIANGLE)
    fit = kmeans(points, 3, seed=1)
    for blob in range(3):
        assert len(set(fit.assignments[labels == blob])) == 1
    assert len(set(fit.assignments)) == 3
    assert all(b <= a + 1e-9 for a, b in zip(fit.history, fit.history[1:]))
    assert fit.objective == fit.history[-1]


def test_kmeans_is_seeded():
    points, _ = blobs(np.random.default_rng(2), TRIANGLE, per_blob=20, spread=3.0)
    first = kmeans(points, 4, seed=9)
    second = kmeans(points, 4, seed=9)
    np.testing.assert_array_equal(first.assignments, second.assignments)
    np.testing.assert_array_equal(first.centroids, second.centroids)


def test_empty_cluster_is_reseeded():
    points = np.array([[0.0, 0.0], [0.0, 1.0], [10.0, 0.0], [10.0, 1.0]])
    fit = kmeans(points, 2, init=np.array([[0.0, 0.5], [100.0, 100.0]]))
    assert fit.reseeds >= 1
    assert fit.assignments[0] == fit.assignments[1]
    assert fit.assignments[2] == fit.assignments[3]
    assert fit.assignments[0] != fit.assignments[2]
    np.testing.assert_allclose(sorted(fit.centroids.tolist()), [[0.0, 0.5], [10.0, 0.5]])


def test_kmeans_input_errors():
    points = np.zeros((3, 2))
    with pytest.raises(TooFewPoints):
        kmeans(points, 4)
    with pytest.raises(TooFewPoints):
        kmeans(points, 0)
    with pytest.raises(ValueError):
        kmeans(points, 2, init=np.zeros((3, 2)))


def test_silhouette_of_separated_blobs():
    points, labels = blobs(np.random.default_rng(5), [[0.0, 0.0], [10.0, 0.0]], spread=0.1)
    assert silhouette(points, labels) > 0.9


def test_silhouette_of_random_split():
    rng = np.random.default_rng(6)
    points, _ = blobs(rng, [[0.0, 0.0]], per_blob=100, spread=1.0)
    assert silhouette(points, rng.integers(0, 2, size=100)) < 0.1


def test_silhouette_edge_cases():
    points = np.array([[0.0], [1.0], [2.0]])
    with pytest.raises(SingleCluster):
        silhouette(points, [0, 0, 0])
    assert silhouette(points, [0, 1, 2]) == 0.0


def test_choose_k_finds_three_blobs():
    hits = 0
    for seed in range(100):
        points, _ = blobs(np.random.default_rng(seed), TRIANGLE)
        k, scores, fits = choose_k(points, 2, 8, seed=seed)
        hits += k == 3
        assert set(scores) == set(fits) == set(range(2, 9))
    assert hits >= 95


def test_choose_k_clips_to_point_count():
    points = np.array([[0.0], [1.0], [5.0], [6.0]])
    k, scores, _ = choose_k(points, 2, 25)
    assert set(scores) == {2, 3}
    assert k == 2
    with pytest.raises(TooFewPoints):
        choose_k(points[:2], 2, 25)


# ----------------------------------------------------------------------------
# representative selection
# ----------------------------------------------------------------------------

def test_representative_is_nearest_member():
    rng = np.random.default_rng(8)
    points, _ = blobs(rng, TRIANGLE, per_blob=15, spread=1.0)
    doc_ids = [f"d{i:03d}" for i in range(len(points))]
    fit = kmeans(points, 3, seed=0)
    chosen = nearest_to_centroids(doc_ids, points, fit)
    for j, doc_id in enumerate(chosen):
        members = np.flatnonzero(fit.assignments == j)
        distances = [float(np.sum((points[m] - fit.centroids[j]) ** 2)) for m in members]
        assert doc_ids.index(doc_id) == members[int(np.argmin(distances))]


def test_duplicate_documents_resolve_to_smallest_id():
    documents = [
        doc("d2", "apple banana"), doc("d1", "apple banana"),
        doc("d4", "cherry grape"), doc("d3", "cherry grape"),
    ]
    result = select_representatives(documents, [StratumPlan("all", clusters=2)], seed=0)
    assert sorted(result.doc_ids) == ["d1", "d3"]


def test_pinned_and_searched_strata():
    documents = topic_corpus(hateful="yes") + [
        doc(f"n{i:02d}", f"calm weather report number {i} sunny", hateful="no") for i in range(4)
    ]
    plan = [
        StratumPlan("hateful", filter={"hateful": "yes"}, k_min=2, k_max=6),
        StratumPlan("not_hateful", filter={"hateful": "no"}, clusters=4),
    ]
    result = select_representatives(documents, plan, seed=0)
    hateful = [s for s in result.selections if s.stratum == "hateful"]
    assert len(hateful) == 3
    assert {s.doc_id.rstrip("0123456789") for s in hateful} == set(TOPICS)
    assert [s.doc_id for s in result.selections if s.stratum == "not_hateful"] == ["n00", "n01", "n02", "n03"]

    summary = result.metadata()["strata"]
    assert summary[0]["k"] == 3 and not summary[0]["k_pinned"]
    assert set(summary[0]["silhouette"]) == {"2", "3", "4", "5", "6"}
    assert summary[1]["k_pinned"]
    assert list(result.to_frame().columns) == ["stratum", "cluster", "doc_id"]


def test_exclude_pattern_drops_documents_before_clustering():
    documents = topic_corpus() + [doc("zz", "football goal match team [deleted]", topic="sport")]
    result = select_representatives(documents, [StratumPlan("all", k_min=2, k_max=5)],
                                    seed=0, exclude_pattern=r"\[deleted\]")
    assert "zz" not in result.doc_ids
    assert result.strata[0].n_excluded == 1
    assert result.strata[0].n_documents == 18
    assert result.metadata()["exclude_pattern"] == r"\[deleted\]"


def test_selection_is_deterministic():
    plan = [StratumPlan("all", k_min=2, k_max=6)]
    first = select_representatives(topic_corpus(), plan, seed=4)
    second = select_representatives(list(reversed(topic_corpus())), plan, seed=4)
    assert first.selections == second.selections


def test_stratum_too_small():
    documents = [doc("d1", "some words"), doc("d2", "other words")]
    with pytest.raises(StratumTooSmall) as info:
        select_representatives(documents, [StratumPlan("tiny", clusters=3)])
    assert info.value.needed == 3
    with pytest.raises(StratumTooSmall):
        select_representatives(documents, [StratumPlan("tiny", k_min=2, k_max=4)])
