"""Comprehension scoring engine.

Summarizes a document, compares a written understanding against both the
summary and the original text with four similarity metrics, and reports the
mean as a comprehension percentage.
"""

from .config import EngineConfig, load_config
from .engine import Engine
from .metrics import (
    METRIC_IDS,
    MetricContext,
    compute_metric,
    cosine_similarity,
    embedding_similarity,
    jaccard_similarity,
    sorensen_similarity,
)
from .scoring import DualScore, format_percent, interpret, score_attempt
from .textproc import normalize, split_sentences, tokenize

__version__ = "0.1.0"

__all__ = [
    "Engine",
    "EngineConfig",
    "load_config",
    "METRIC_IDS",
    "MetricContext",
    "compute_metric",
    "cosine_similarity",
    "sorensen_similarity",
    "jaccard_similarity",
    "embedding_similarity",
    "DualScore",
    "score_attempt",
    "format_percent",
    "interpret",
    "normalize",
    "tokenize",
    "split_sentences",
    "__version__",
]
