"""Document ingestion: plain text directly, PDFs through an external extractor hook.

Also owns sentence-aligned chunking, which both the embedding pooling and the
map-reduce summarizer consume.
"""

from __future__ import annotations

import shlex
import subprocess
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from .errors import EmptyText, ExtractorFailed, NotFound
from .textproc import Sentence, split_sentences

EXTRACTOR_TIMEOUT_SECONDS = 60
MIN_CHUNK_CHARS = 200


def utc_now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass
class Document:
    """Source material plus its derived sentence list."""

    document_id: str
    title: str
    text: str
    sentences: list[Sentence] = field(repr=False)
    created_at: str
    source: str  # inline_text | text_file | pdf_extractor

    def to_record(self) -> dict:
        return {
            "document_id": self.document_id,
            "title": self.title,
            "text": self.text,
            "created_at": self.created_at,
            "source": self.source,
        }

    @classmethod
    def from_record(cls, record: dict) -> "Document":
        return cls(
            document_id=record["document_id"],
            title=record["title"],
            text=record["text"],
            sentences=split_sentences(record["text"]),
            created_at=record["created_at"],
            source=record["source"],
        )


@dataclass(frozen=True)
class Chunk:
    """A contiguous run of sentences, at most ``max_chunk_chars`` long unless a
    single sentence is itself oversized."""

    index: int
    text: str
    start_sentence: int  # inclusive
    end_sentence: int  # exclusive


def make_document(title: str, text: str, source: str = "inline_text") -> Document:
    """Build an unpersisted Document; line endings normalized to \\n."""
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    if not text.strip():
        raise EmptyText("document text is empty")
    return Document(
        document_id=str(uuid.uuid4()),
        title=title,
        text=text,
        sentences=split_sentences(text),
        created_at=utc_now_iso(),
        source=source,
    )


def ingest_text(title: str, text: str, store=None, source: str = "inline_text") -> Document:
    doc = make_document(title, text, source=source)
    if store is not None:
        store.put("documents", doc.document_id, doc.to_record())
    return doc


def ingest_pdf(title: str, pdf_path: str | Path, extractor_command: str, store=None) -> Document:
    """Run the configured extractor subprocess and ingest its stdout as text.

    ``extractor_command`` is a template such as ``"pdftotext {input} -"``;
    ``{input}`` is substituted with the PDF path in each argument.
    """
    path = Path(pdf_path)
    if not path.is_file():
        raise NotFound(f"pdf file not found: {path}")
    if not extractor_command.strip():
        raise ExtractorFailed("no pdf_extractor_command configured")
    args = [arg.replace("{input}", str(path)) for arg in shlex.split(extractor_command)]
    try:
        proc = subprocess.run(
            args,
            capture_output=True,
            timeout=EXTRACTOR_TIMEOUT_SECONDS,
        )
    except subprocess.TimeoutExpired:
        raise ExtractorFailed(f"extractor timed out after {EXTRACTOR_TIMEOUT_SECONDS}s")
    except OSError as exc:
        raise ExtractorFailed(f"extractor could not be launched: {exc}")
    stderr = proc.stderr.decode("utf-8", errors="replace")
    if proc.returncode != 0:
        raise ExtractorFailed(
            f"extractor exited with status {proc.returncode}", stderr=stderr
        )
    text = proc.stdout.decode("utf-8", errors="replace")
    if not text.strip():
        raise ExtractorFailed("extractor produced no output", stderr=stderr)
    return ingest_text(title, text, store=store, source="pdf_extractor")


def pack_sentences(sentences: Sequence[Sentence], max_chunk_chars: int) -> list[Chunk]:
    """Greedy packing: grow a chunk while the space-joined text stays within
    the limit; an oversized sentence becomes its own chunk."""
    if max_chunk_chars < MIN_CHUNK_CHARS:
        raise ValueError(f"max_chunk_chars must be >= {MIN_CHUNK_CHARS}")
    chunks: list[Chunk] = []
    current: list[str] = []
    current_len = 0
    chunk_start = 0
    for i, sentence in enumerate(sentences):
        addition = len(sentence.text) if not current else len(sentence.text) + 1
        if current and current_len + addition > max_chunk_chars:
            chunks.append(
                Chunk(
                    index=len(chunks),
                    text=" ".join(current),
                    start_sentence=chunk_start,
                    end_sentence=i,
                )
            )
            current = []
            current_len = 0
            chunk_start = i
            addition = len(sentence.text)
        current.append(sentence.text)
        current_len += addition
    if current:
        chunks.append(
            Chunk(
                index=len(chunks),
                text=" ".join(current),
                start_sentence=chunk_start,
                end_sentence=len(sentences),
            )
        )
    return chunks


def chunk_text(doc: Document, max_chunk_chars: int) -> list[Chunk]:
    return pack_sentences(doc.sentences, max_chunk_chars)


def chunk_plain_text(text: str, max_chunk_chars: int) -> list[Chunk]:
    return pack_sentences(split_sentences(text), max_chunk_chars)
