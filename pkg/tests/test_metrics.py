from __future__ import annotations

import random

import pytest

from ase.embeddings import DeterministicEmbeddingProvider
from ase.errors import (
    DimensionMismatch,
    EmptySet,
    EmptyVector,
    InvalidRequest,
    ZeroMagnitude,
)
from ase.metrics import (
    METRIC_IDS,
    MetricContext,
    compute_metric,
    cosine_similarity,
    embedding_similarity,
    jaccard_similarity,
    sorensen_similarity,
)

# ---- independent oracles: explicit union vocabulary, plain loops ----


def brute_force_cosine(a: dict, b: dict) -> float:
    vocab = sorted(set(a) | set(b))
    va = [a.get(t, 0.0) for t in vocab]
    vb = [b.get(t, 0.0) for t in vocab]
    dot = sum(x * y for x, y in zip(va, vb))
    norm_a = sum(x * x for x in va) ** 0.5
    norm_b = sum(y * y for y in vb) ** 0.5
    return dot / (norm_a * norm_b)


def enumerate_sorensen(a: set, b: set) -> float:
    intersection = sum(1 for t in a if t in b)
    return 2.0 * intersection / (len(a) + len(b))


def enumerate_jaccard(a: set, b: set) -> float:
    intersection = sum(1 for t in a if t in b)
    union = len(set(list(a) + list(b)))
    return intersection / union


def random_multiset(rng: random.Random, vocab: list[str]) -> dict[str, float]:
    terms = rng.sample(vocab, rng.randint(1, len(vocab)))
    return {t: float(rng.randint(1, 5)) for t in terms}


VOCAB = ["alpha", "beta", "gamma", "delta", "eps", "zeta", "eta", "theta"]


class TestCosine:
    def test_identical(self):
        assert cosine_similarity({"a": 1, "b": 1}, {"a": 1, "b": 1}) == 1.0

    def test_disjoint(self):
        assert cosine_similarity({"a": 1}, {"b": 1}) == 0.0

    def test_derived_example(self):
        # dot = 4, norms sqrt(5) * sqrt(5) = 5
        assert abs(cosine_similarity({"a": 1, "b": 2}, {"a": 2, "b": 1}) - 0.8) < 1e-12

    def test_empty_raises(self):
        with pytest.raises(EmptyVector):
            cosine_similarity({}, {"a": 1})
        with pytest.raises(EmptyVector):
            cosine_similarity({"a": 1}, {})


class TestSetMetrics:
    def test_sorensen_identical(self):
        assert sorensen_similarity({"a", "b", "c"}, {"a", "b", "c"}) == 1.0

    def test_sorensen_disjoint(self):
        assert sorensen_similarity({"a", "b"}, {"c", "d"}) == 0.0

    def test_sorensen_derived(self):
        value = sorensen_similarity({"a", "b", "c"}, {"b", "c", "d"})
        assert abs(value - 2.0 / 3.0) < 1e-12

    def test_jaccard_identical(self):
        assert jaccard_similarity({"a", "b", "c"}, {"a", "b", "c"}) == 1.0

    def test_jaccard_disjoint(self):
        assert jaccard_similarity({"a", "b"}, {"c", "d"}) == 0.0

    def test_jaccard_derived(self):
        assert jaccard_similarity({"a", "b", "c"}, {"b", "c", "d"}) == 0.5

    def test_empty_raises(self):
        with pytest.raises(EmptySet):
            sorensen_similarity(set(), {"a"})
        with pytest.raises(EmptySet):
            jaccard_similarity({"a"}, set())


class TestEmbeddingSimilarity:
    def test_self_similarity(self):
        v = (0.3, -0.4, 0.5)
        assert embedding_similarity(v, v) == 1.0

    def test_orthogonal(self):
        assert embedding_similarity((1.0, 0.0), (0.0, 1.0)) == 0.0

    def test_negative_cosine_clamps_to_zero(self):
        assert embedding_similarity((1.0, 0.0), (-1.0, 0.0)) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            embedding_similarity((1.0,), (1.0, 0.0))

    def test_zero_magnitude(self):
        with pytest.raises(ZeroMagnitude):
            embedding_similarity((0.0, 0.0), (1.0, 0.0))


class TestOracleEquivalence:
    def test_cosine_matches_brute_force(self):
        rng = random.Random(42)
        for _ in range(1000):
            a = random_multiset(rng, VOCAB)
            b = random_multiset(rng, VOCAB)
            assert abs(cosine_similarity(a, b) - brute_force_cosine(a, b)) <= 1e-12

    def test_set_metrics_match_enumeration(self):
        rng = random.Random(43)
        for _ in range(1000):
            a = set(random_multiset(rng, VOCAB))
            b = set(random_multiset(rng, VOCAB))
            assert abs(sorensen_similarity(a, b) - enumerate_sorensen(a, b)) <= 1e-12
            assert abs(jaccard_similarity(a, b) - enumerate_jaccard(a, b)) <= 1e-12


class TestMetricProperties:
    def test_bounds_symmetry_identity_and_order(self):
        rng = random.Random(44)
        for _ in range(500):
            a = random_multiset(rng, VOCAB)
            b = random_multiset(rng, VOCAB)
            sa, sb = set(a), set(b)

            cos = cosine_similarity(a, b)
            dice = sorensen_similarity(sa, sb)
            jac = jaccard_similarity(sa, sb)
            for value in (cos, dice, jac):
                assert 0.0 <= value <= 1.0

            # symmetry is exact, not approximate
            assert cosine_similarity(b, a) == cos
            assert sorensen_similarity(sb, sa) == dice
            assert jaccard_similarity(sb, sa) == jac

            assert cosine_similarity(a, a) == 1.0
            assert sorensen_similarity(sa, sa) == 1.0
            assert jaccard_similarity(sa, sa) == 1.0

            # J = D / (2 - D): jaccard never exceeds dice, equal only at 0 and 1
            assert jac <= dice
            if jac == dice:
                assert jac in (0.0, 1.0)

    def test_embedding_properties(self):
        rng = random.Random(45)
        for _ in range(500):
            dim = rng.randint(2, 6)
            a = tuple(rng.uniform(-1, 1) for _ in range(dim))
            b = tuple(rng.uniform(-1, 1) for _ in range(dim))
            value = embedding_similarity(a, b)
            assert 0.0 <= value <= 1.0
            assert embedding_similarity(b, a) == value
            assert abs(embedding_similarity(a, a) - 1.0) <= 1e-9


class TestComputeMetric:
    @pytest.fixture
    def context(self):
        return MetricContext(embedder=DeterministicEmbeddingProvider(dimension=16))

    def test_jaccard_route(self, context):
        assert compute_metric("jaccard", "a b c", "b c d", context) == 0.5

    def test_identical_texts_score_one(self, context):
        text = "the quick brown fox"
        for metric_id in METRIC_IDS:
            assert compute_metric(metric_id, text, text, context) == 1.0

    def test_stopwords_respected(self):
        context = MetricContext(
            embedder=DeterministicEmbeddingProvider(dimension=8),
            stopwords=frozenset({"the"}),
        )
        assert compute_metric("jaccard", "the cat", "a cat", context) == 0.5

    def test_empty_inputs_propagate(self, context):
        with pytest.raises(EmptyVector):
            compute_metric("cosine", "!!!", "a b", context)
        with pytest.raises(EmptySet):
            compute_metric("sorensen", "a b", "???", context)

    def test_unknown_metric(self, context):
        with pytest.raises(InvalidRequest):
            compute_metric("rouge", "a", "b", context)
