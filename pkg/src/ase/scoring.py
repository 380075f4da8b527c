"""Dual-comparison scoring: the user's understanding measured against the
summary and against the original document, averaged into a comprehension
percentage.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

from .errors import EmptyUnderstanding, EngineError, OutOfRange, SummaryDocumentMismatch
from .ingest import Document, utc_now_iso
from .metrics import METRIC_IDS, MetricContext, compute_metric, validate_metric_id
from .summarize import Summary
from .textproc import tokenize

DEFAULT_HEADLINE_METRIC = "embedding"

BANDS = (
    (80.0, "strong"),
    (60.0, "adequate"),
    (40.0, "partial"),
    (0.0, "needs review"),
)


@dataclass(frozen=True)
class DualScore:
    """One metric's pair of comparisons plus their arithmetic mean."""

    vs_summary: float
    vs_original: float
    mean: float

    @classmethod
    def of_pair(cls, vs_summary: float, vs_original: float) -> "DualScore":
        return cls(
            vs_summary=vs_summary,
            vs_original=vs_original,
            mean=(vs_summary + vs_original) / 2.0,
        )

    def to_record(self) -> dict:
        return {
            "vs_summary": self.vs_summary,
            "vs_original": self.vs_original,
            "mean": self.mean,
        }


@dataclass(frozen=True)
class MetricFailure:
    """Marker stored in place of a score when a non-headline metric errored."""

    error: str
    message: str

    def to_record(self) -> dict:
        return {"error": self.error, "message": self.message}


@dataclass
class Attempt:
    attempt_id: str
    document_id: str
    summary_id: str
    understanding_text: str
    created_at: str
    breakdown: dict[str, DualScore | MetricFailure] = field(default_factory=dict)
    headline_metric: str = DEFAULT_HEADLINE_METRIC
    comprehension_percent: float = 0.0

    def to_record(self) -> dict:
        return {
            "attempt_id": self.attempt_id,
            "document_id": self.document_id,
            "summary_id": self.summary_id,
            "understanding_text": self.understanding_text,
            "created_at": self.created_at,
            "breakdown": {m: s.to_record() for m, s in self.breakdown.items()},
            "headline_metric": self.headline_metric,
            "comprehension_percent": self.comprehension_percent,
        }

    @classmethod
    def from_record(cls, record: dict) -> "Attempt":
        breakdown: dict[str, DualScore | MetricFailure] = {}
        for metric_id, entry in record["breakdown"].items():
            if "error" in entry:
                breakdown[metric_id] = MetricFailure(
                    error=entry["error"], message=entry.get("message", "")
                )
            else:
                breakdown[metric_id] = DualScore(
                    vs_summary=entry["vs_summary"],
                    vs_original=entry["vs_original"],
                    mean=entry["mean"],
                )
        return cls(
            attempt_id=record["attempt_id"],
            document_id=record["document_id"],
            summary_id=record["summary_id"],
            understanding_text=record["understanding_text"],
            created_at=record["created_at"],
            breakdown=breakdown,
            headline_metric=record["headline_metric"],
            comprehension_percent=record["comprehension_percent"],
        )


def round_half_up_percent(mean: float) -> float:
    """100 x mean, rounded half-up to two decimals.

    Rounding applies to the shortest decimal form of the float so that
    values like 0.70005 round the way a human doing decimal arithmetic
    expects.
    """
    if not 0.0 <= mean <= 1.0:
        raise OutOfRange(f"mean must lie in [0, 1], got {mean}")
    quantized = (Decimal(str(mean)) * 100).quantize(
        Decimal("0.01"), rounding=ROUND_HALF_UP
    )
    return float(quantized)


def format_percent(mean: float) -> str:
    """Render a [0, 1] mean as a two-decimal percentage string, e.g. '85.84%'."""
    if not 0.0 <= mean <= 1.0:
        raise OutOfRange(f"mean must lie in [0, 1], got {mean}")
    quantized = (Decimal(str(mean)) * 100).quantize(
        Decimal("0.01"), rounding=ROUND_HALF_UP
    )
    return f"{quantized}%"


def interpret(comprehension_percent: float) -> str:
    """Qualitative band for a percentage; reported alongside the number,
    never instead of it."""
    if not 0.0 <= comprehension_percent <= 100.0:
        raise OutOfRange(
            f"comprehension percent must lie in [0, 100], got {comprehension_percent}"
        )
    for threshold, band in BANDS:
        if comprehension_percent >= threshold:
            return band
    raise AssertionError("unreachable: range already validated")


def score_attempt(
    doc: Document,
    summary: Summary,
    understanding_text: str,
    context: MetricContext,
    store=None,
    headline_metric: str = DEFAULT_HEADLINE_METRIC,
) -> Attempt:
    """Score the understanding against summary and original on all four metrics.

    A non-headline metric that errors is recorded as a failure marker; an
    error in the headline metric fails the whole attempt.
    """
    validate_metric_id(headline_metric)
    if summary.document_id != doc.document_id:
        raise SummaryDocumentMismatch(
            f"summary {summary.summary_id} belongs to document "
            f"{summary.document_id}, not {doc.document_id}"
        )
    if not tokenize(understanding_text, stopwords=context.stopwords):
        raise EmptyUnderstanding("understanding text tokenizes to nothing")

    breakdown: dict[str, DualScore | MetricFailure] = {}
    for metric_id in METRIC_IDS:
        try:
            vs_summary = compute_metric(metric_id, understanding_text, summary.text, context)
            vs_original = compute_metric(metric_id, understanding_text, doc.text, context)
            breakdown[metric_id] = DualScore.of_pair(vs_summary, vs_original)
        except EngineError as exc:
            if metric_id == headline_metric:
                raise
            breakdown[metric_id] = MetricFailure(error=exc.code, message=str(exc))

    headline = breakdown[headline_metric]
    assert isinstance(headline, DualScore)
    attempt = Attempt(
        attempt_id=str(uuid.uuid4()),
        document_id=doc.document_id,
        summary_id=summary.summary_id,
        understanding_text=understanding_text,
        created_at=utc_now_iso(),
        breakdown=breakdown,
        headline_metric=headline_metric,
        comprehension_percent=round_half_up_percent(headline.mean),
    )
    if store is not None:
        store.put("attempts", attempt.attempt_id, attempt.to_record())
    return attempt
