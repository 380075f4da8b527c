from __future__ import annotations

import random

import pytest

from ase.embeddings import DeterministicEmbeddingProvider
from ase.errors import (
    EmptyUnderstanding,
    OutOfRange,
    ProviderUnavailable,
    SummaryDocumentMismatch,
)
from ase.ingest import make_document, utc_now_iso
from ase.metrics import METRIC_IDS, MetricContext
from ase.scoring import (
    Attempt,
    DualScore,
    MetricFailure,
    format_percent,
    interpret,
    round_half_up_percent,
    score_attempt,
)
from ase.store import Store
from ase.summarize import Summary, extractive_summarize


def make_context(**kwargs) -> MetricContext:
    return MetricContext(embedder=DeterministicEmbeddingProvider(dimension=16), **kwargs)


def summary_for(doc, text: str) -> Summary:
    return Summary(
        summary_id="s-test",
        document_id=doc.document_id,
        text=text,
        backend="extractive",
        created_at=utc_now_iso(),
        params={},
    )


class TestDualScore:
    def test_mean_is_exact_arithmetic_mean(self):
        rng = random.Random(7)
        for _ in range(500):
            a, b = rng.random(), rng.random()
            ds = DualScore.of_pair(a, b)
            assert ds.mean == (a + b) / 2.0

    def test_record_roundtrip_is_bit_exact(self):
        ds = DualScore.of_pair(0.123456789012345678, 1.0 / 3.0)
        restored = DualScore(**ds.to_record())
        assert restored == ds


class TestFormatPercent:
    def test_two_decimal_style(self):
        assert format_percent(0.8584) == "85.84%"

    def test_zero(self):
        assert format_percent(0.0) == "0.00%"

    def test_half_up(self):
        assert format_percent(0.70005) == "70.01%"

    def test_full(self):
        assert format_percent(1.0) == "100.00%"

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            format_percent(1.2)
        with pytest.raises(OutOfRange):
            format_percent(-0.1)

    def test_round_half_up_percent(self):
        assert round_half_up_percent(0.70005) == 70.01
        assert round_half_up_percent(0.7) == 70.0
        assert round_half_up_percent(1.0) == 100.0


class TestInterpret:
    @pytest.mark.parametrize(
        "percent,band",
        [
            (85.84, "strong"),
            (80.0, "strong"),
            (79.99, "adequate"),
            (60.0, "adequate"),
            (59.99, "partial"),
            (40.0, "partial"),
            (39.99, "needs review"),
            (0.0, "needs review"),
            (100.0, "strong"),
        ],
    )
    def test_bands(self, percent, band):
        assert interpret(percent) == band

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            interpret(101.0)
        with pytest.raises(OutOfRange):
            interpret(-1.0)


class TestScoreAttempt:
    def test_identity_scores_100_on_every_metric(self, tmp_path):
        store = Store(tmp_path / "store")
        text = "The cat sat. The dog barked. Birds sing."
        doc = make_document("t", text)
        summary = extractive_summarize(doc, 5)
        assert summary.text == text
        attempt = score_attempt(doc, summary, text, make_context(), store=store)
        for metric_id in METRIC_IDS:
            assert attempt.breakdown[metric_id].mean == 1.0
        assert attempt.comprehension_percent == 100.0
        assert store.get("attempts", attempt.attempt_id)["comprehension_percent"] == 100.0

    def test_headline_mean_becomes_percent(self):
        # cosine of (3,1) vs (9,13) is exactly 0.8; vs (1,3) exactly 0.6
        doc = make_document("t", "a b b b")
        summary = summary_for(doc, " ".join(["a"] * 9 + ["b"] * 13))
        understanding = "a a a b"
        attempt = score_attempt(
            doc, summary, understanding, make_context(), headline_metric="cosine"
        )
        cosine = attempt.breakdown["cosine"]
        assert cosine.vs_summary == 0.8
        assert cosine.vs_original == 0.6
        assert attempt.comprehension_percent == 70.0
        assert attempt.headline_metric == "cosine"

    def test_disjoint_tokens_score_zero_on_token_metrics(self):
        doc = make_document("t", "alpha beta gamma")
        summary = summary_for(doc, "alpha beta")
        attempt = score_attempt(doc, summary, "delta epsilon", make_context())
        for metric_id in ("cosine", "sorensen", "jaccard"):
            assert attempt.breakdown[metric_id].mean == 0.0

    def test_empty_understanding(self):
        doc = make_document("t", "alpha beta")
        summary = summary_for(doc, "alpha")
        with pytest.raises(EmptyUnderstanding):
            score_attempt(doc, summary, "?!", make_context())

    def test_summary_document_mismatch(self):
        doc = make_document("t", "alpha beta")
        other = make_document("t2", "gamma delta")
        summary = extractive_summarize(other, 1)
        with pytest.raises(SummaryDocumentMismatch):
            score_attempt(doc, summary, "alpha", make_context())

    def test_breakdown_always_has_all_metric_ids(self):
        doc = make_document("t", "alpha beta gamma")
        summary = summary_for(doc, "alpha beta")
        attempt = score_attempt(doc, summary, "alpha gamma", make_context())
        assert set(attempt.breakdown) == set(METRIC_IDS)


class _BrokenEmbedder:
    kind = "deterministic"
    max_chunk_chars = 3000

    def embed(self, text):
        raise ProviderUnavailable("embedder offline")

    def healthcheck(self):
        return {"status": "error", "detail": "offline"}


class TestMetricFailureHandling:
    def test_non_headline_failure_recorded_as_marker(self):
        doc = make_document("t", "alpha beta gamma")
        summary = summary_for(doc, "alpha beta")
        context = MetricContext(embedder=_BrokenEmbedder())
        attempt = score_attempt(
            doc, summary, "alpha", context, headline_metric="cosine"
        )
        marker = attempt.breakdown["embedding"]
        assert isinstance(marker, MetricFailure)
        assert marker.error == "provider_unavailable"
        assert isinstance(attempt.breakdown["cosine"], DualScore)

    def test_headline_failure_fails_attempt(self):
        doc = make_document("t", "alpha beta gamma")
        summary = summary_for(doc, "alpha beta")
        context = MetricContext(embedder=_BrokenEmbedder())
        with pytest.raises(ProviderUnavailable):
            score_attempt(doc, summary, "alpha", context, headline_metric="embedding")

    def test_failure_marker_survives_persistence(self, tmp_path):
        store = Store(tmp_path / "store")
        doc = make_document("t", "alpha beta gamma")
        summary = summary_for(doc, "alpha beta")
        context = MetricContext(embedder=_BrokenEmbedder())
        attempt = score_attempt(
            doc, summary, "alpha", context, store=store, headline_metric="cosine"
        )
        restored = Attempt.from_record(store.get("attempts", attempt.attempt_id))
        assert restored.breakdown["embedding"] == attempt.breakdown["embedding"]
        assert restored.breakdown["cosine"] == attempt.breakdown["cosine"]
        assert restored.comprehension_percent == attempt.comprehension_percent


class TestAggregationProperties:
    def test_monotonic_in_vs_summary(self):
        rng = random.Random(8)
        for _ in range(200):
            vs_original = rng.random()
            lower = rng.random()
            higher = min(1.0, lower + rng.random() * (1.0 - lower))
            p_low = round_half_up_percent(DualScore.of_pair(lower, vs_original).mean)
            p_high = round_half_up_percent(DualScore.of_pair(higher, vs_original).mean)
            assert p_high >= p_low

    def test_determinism_of_repeated_attempts(self):
        doc = make_document("t", "alpha beta gamma. delta epsilon.")
        summary = extractive_summarize(doc, 1)
        context = make_context()
        first = score_attempt(doc, summary, "alpha delta", context)
        second = score_attempt(doc, summary, "alpha delta", context)
        assert first.breakdown == second.breakdown
        assert first.comprehension_percent == second.comprehension_percent

    def test_all_scores_in_bounds(self):
        rng = random.Random(9)
        words = ["ant", "bee", "cow", "dog", "elk", "fox"]
        context = make_context()
        for _ in range(25):
            doc_text = " ".join(rng.choice(words) for _ in range(rng.randint(3, 12)))
            doc = make_document("t", doc_text)
            summary = extractive_summarize(doc, 2)
            understanding = " ".join(rng.choice(words) for _ in range(rng.randint(1, 8)))
            attempt = score_attempt(doc, summary, understanding, context)
            assert 0.0 <= attempt.comprehension_percent <= 100.0
            for result in attempt.breakdown.values():
                assert isinstance(result, DualScore)
                assert 0.0 <= result.vs_summary <= 1.0
                assert 0.0 <= result.vs_original <= 1.0
                assert 0.0 <= result.mean <= 1.0
