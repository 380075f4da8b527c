"""Benchmark harness: run a labeled corpus through the full pipeline and
report the per-metric mean comprehension percentage as a fixed four-row table.

With deterministic backends the report is byte-reproducible, which makes it a
regression instrument: compare against a pinned golden report.
"""

from __future__ import annotations

import hashlib
import json
import tempfile
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .config import EngineConfig
from .engine import Engine
from .errors import AllEntriesFailed, DuplicateId, EngineError, InvalidRequest, NotFound, ParseError
from .ingest import utc_now_iso
from .metrics import METRIC_IDS
from .scoring import DualScore, format_percent, round_half_up_percent

REPORT_ROWS = (
    ("cosine", "Cosine Similarity Score"),
    ("sorensen", "Sorensen Similarity"),
    ("jaccard", "Jaccard Similarity"),
    ("embedding", "Bert-Based Embeddings"),
)

# Config keys that influence benchmark scores; the fingerprint hashes these.
_FINGERPRINT_KEYS = (
    "embedding_kind",
    "embedding_url",
    "embedding_model",
    "embedding_dim",
    "max_chunk_chars",
    "summarizer_backend",
    "target_sentences",
    "chunk_chars",
    "llm_url",
    "llm_model",
    "remove_stopwords",
    "stopword_file",
)


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    text: str
    understanding: str
    expected_band: str | None = None


@dataclass
class BenchmarkReport:
    per_metric_mean_percent: dict[str, float]
    entry_count: int
    failed_count: int
    failed_ids: list[str]
    config_fingerprint: str
    created_at: str = field(default_factory=utc_now_iso)

    def reproducible_dict(self) -> dict:
        """Everything except the wall-clock timestamp; this is what golden
        comparisons pin."""
        return {
            "per_metric_mean_percent": self.per_metric_mean_percent,
            "entry_count": self.entry_count,
            "failed_count": self.failed_count,
            "failed_ids": self.failed_ids,
            "config_fingerprint": self.config_fingerprint,
        }

    def reproducible_json(self) -> str:
        return json.dumps(self.reproducible_dict(), sort_keys=True, indent=2) + "\n"

    def to_record(self) -> dict:
        record = self.reproducible_dict()
        record["created_at"] = self.created_at
        return record


def bundled_corpus_path() -> Path:
    """Path of the 12-entry synthetic corpus shipped with the package."""
    return Path(str(resources.files("ase").joinpath("data/benchmark_corpus.jsonl")))


def load_corpus(path: str | Path) -> list[CorpusEntry]:
    """Parse a newline-delimited corpus file: one JSON object per line with
    fields id, text, understanding and optional expected_band."""
    corpus_path = Path(path)
    if not corpus_path.is_file():
        raise NotFound(f"corpus file not found: {corpus_path}")
    entries: list[CorpusEntry] = []
    seen: set[str] = set()
    with open(corpus_path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"line {line_no}: invalid JSON ({exc.msg})", line=line_no)
            if not isinstance(raw, dict):
                raise ParseError(f"line {line_no}: record must be a JSON object", line=line_no)
            try:
                entry = CorpusEntry(
                    id=str(raw["id"]),
                    text=str(raw["text"]),
                    understanding=str(raw["understanding"]),
                    expected_band=raw.get("expected_band"),
                )
            except KeyError as exc:
                raise ParseError(
                    f"line {line_no}: missing field {exc.args[0]!r}", line=line_no
                )
            if not entry.text or not entry.understanding:
                raise ParseError(
                    f"line {line_no}: text and understanding must be non-empty",
                    line=line_no,
                )
            if entry.id in seen:
                raise DuplicateId(f"duplicate corpus id {entry.id!r} at line {line_no}")
            seen.add(entry.id)
            entries.append(entry)
    return entries


def config_fingerprint(config: EngineConfig) -> str:
    subset = {key: getattr(config, key) for key in _FINGERPRINT_KEYS}
    canonical = json.dumps(subset, sort_keys=True)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def run_benchmark(entries: list[CorpusEntry], config: EngineConfig) -> BenchmarkReport:
    """Ingest, summarize and score every entry; report per-metric means.

    Runs against a scratch store so repeated runs never see earlier records.
    Entries that fail to score are excluded from the means and counted.
    """
    if not entries:
        raise InvalidRequest("corpus is empty")
    percents: dict[str, list[float]] = {metric_id: [] for metric_id in METRIC_IDS}
    failed_ids: list[str] = []
    scored = 0
    with tempfile.TemporaryDirectory(prefix="ase-benchmark-") as scratch:
        scratch_config = EngineConfig(**{**config.to_dict(), "store_root": scratch})
        engine = Engine(scratch_config)
        for entry in entries:
            try:
                doc = engine.ingest_text(entry.id, entry.text)
                summary = engine.summarize_document(
                    doc.document_id, engine.default_summary_request()
                )
                attempt = engine.score(
                    doc.document_id, summary.summary_id, entry.understanding
                )
            except EngineError:
                failed_ids.append(entry.id)
                continue
            scored += 1
            for metric_id in METRIC_IDS:
                result = attempt.breakdown[metric_id]
                if isinstance(result, DualScore):
                    percents[metric_id].append(round_half_up_percent(result.mean))
    if scored == 0:
        raise AllEntriesFailed(f"all {len(entries)} corpus entries failed to score")
    means = {
        metric_id: sum(values) / len(values) if values else 0.0
        for metric_id, values in percents.items()
    }
    return BenchmarkReport(
        per_metric_mean_percent=means,
        entry_count=scored,
        failed_count=len(failed_ids),
        failed_ids=failed_ids,
        config_fingerprint=config_fingerprint(config),
    )


def render_report(report: BenchmarkReport) -> str:
    """Fixed-order four-row table with S.NO., metric label and score columns."""
    rows = []
    for serial, (metric_id, label) in enumerate(REPORT_ROWS, start=1):
        percent = report.per_metric_mean_percent.get(metric_id, 0.0)
        rows.append((str(serial), label, format_percent(percent / 100.0)))
    header = ("S.NO.", "Similarity Metrics", "Score")
    widths = [
        max(len(header[col]), *(len(row[col]) for row in rows)) for col in range(3)
    ]
    lines = [
        "  ".join(header[col].ljust(widths[col]) for col in range(3)).rstrip(),
        "  ".join("-" * widths[col] for col in range(3)),
    ]
    for row in rows:
        lines.append("  ".join(row[col].ljust(widths[col]) for col in range(3)).rstrip())
    return "\n".join(lines) + "\n"
