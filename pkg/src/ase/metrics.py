"""The four similarity measures, each mapping two text representations to [0, 1].

Arithmetic is ordered deliberately: sums run over sorted keys with
``math.fsum`` so that symmetry is exact and identical inputs score exactly 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .embeddings import EmbeddingProvider, embed_text
from .errors import (
    DimensionMismatch,
    EmptySet,
    EmptyVector,
    InvalidRequest,
    ZeroMagnitude,
)
from .textproc import to_term_vector, to_token_set, tokenize

# Serialized identifiers, in report row order.
METRIC_IDS: tuple[str, ...] = ("cosine", "sorensen", "jaccard", "embedding")


def validate_metric_id(metric_id: str) -> str:
    if metric_id not in METRIC_IDS:
        raise InvalidRequest(
            f"unknown metric {metric_id!r}; expected one of {', '.join(METRIC_IDS)}"
        )
    return metric_id


@dataclass(frozen=True)
class MetricContext:
    """Tokenization and embedding dependencies for text-level metric dispatch."""

    embedder: EmbeddingProvider
    stopwords: frozenset[str] | None = None
    idf: Mapping[str, float] | None = None


def cosine_similarity(a: Mapping[str, float], b: Mapping[str, float]) -> float:
    """dot(a, b) / (||a|| * ||b||) over the union vocabulary; in [0, 1] for
    non-negative weights."""
    if not a:
        raise EmptyVector("first term vector has no entries")
    if not b:
        raise EmptyVector("second term vector has no entries")
    common = sorted(set(a) & set(b))
    dot = math.fsum(a[t] * b[t] for t in common)
    norm_a_sq = math.fsum(a[t] * a[t] for t in sorted(a))
    norm_b_sq = math.fsum(b[t] * b[t] for t in sorted(b))
    value = dot / math.sqrt(norm_a_sq * norm_b_sq)
    return min(1.0, max(0.0, value))


def sorensen_similarity(a: frozenset[str] | set, b: frozenset[str] | set) -> float:
    """Sorensen-Dice coefficient 2|a&b| / (|a| + |b|)."""
    if not a:
        raise EmptySet("first token set is empty")
    if not b:
        raise EmptySet("second token set is empty")
    return 2.0 * len(a & b) / (len(a) + len(b))


def jaccard_similarity(a: frozenset[str] | set, b: frozenset[str] | set) -> float:
    """Jaccard index: intersection size over union size."""
    if not a:
        raise EmptySet("first token set is empty")
    if not b:
        raise EmptySet("second token set is empty")
    return len(a & b) / len(a | b)


def embedding_similarity(a: Sequence[float], b: Sequence[float]) -> float:
    """Cosine of two dense vectors, clamped into [0, 1]."""
    if len(a) != len(b):
        raise DimensionMismatch(f"vector dimensions differ: {len(a)} vs {len(b)}")
    norm_a_sq = math.fsum(x * x for x in a)
    norm_b_sq = math.fsum(x * x for x in b)
    if norm_a_sq == 0.0:
        raise ZeroMagnitude("first vector has zero magnitude")
    if norm_b_sq == 0.0:
        raise ZeroMagnitude("second vector has zero magnitude")
    dot = math.fsum(x * y for x, y in zip(a, b))
    value = dot / math.sqrt(norm_a_sq * norm_b_sq)
    return min(1.0, max(0.0, value))


def compute_metric(
    metric_id: str, user_text: str, reference_text: str, context: MetricContext
) -> float:
    """Route one metric to its representation and score the two texts."""
    validate_metric_id(metric_id)
    if metric_id == "embedding":
        return embedding_similarity(
            embed_text(context.embedder, user_text),
            embed_text(context.embedder, reference_text),
        )
    user_seq = tokenize(user_text, stopwords=context.stopwords)
    ref_seq = tokenize(reference_text, stopwords=context.stopwords)
    if metric_id == "cosine":
        return cosine_similarity(
            to_term_vector(user_seq, idf=context.idf),
            to_term_vector(ref_seq, idf=context.idf),
        )
    user_set = to_token_set(user_seq)
    ref_set = to_token_set(ref_seq)
    if metric_id == "sorensen":
        return sorensen_similarity(user_set, ref_set)
    return jaccard_similarity(user_set, ref_set)
