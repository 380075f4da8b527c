"""Summarization backends: a deterministic extractive scorer that keeps the
pipeline offline, and a map-reduce chain over a remote text-completion service.
"""

from __future__ import annotations

import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Protocol

import httpx

from .errors import (
    EmptyDocument,
    InvalidRequest,
    ProviderContract,
    ProviderUnavailable,
)
from .ingest import Chunk, Document, chunk_plain_text, chunk_text, utc_now_iso
from .textproc import tokenize

BACKENDS = ("extractive", "llm_chain")

DEFAULT_MAP_PROMPT = "Summarize the following text concisely:\n{text}"
DEFAULT_REDUCE_PROMPT = (
    "Combine the following partial summaries into one coherent summary:\n{text}"
)

MAX_REDUCE_DEPTH = 5
MAX_CONCURRENT_LLM_CALLS = 4
LLM_RETRIES = 2

# Function words ignored when scoring sentences; never removed from output.
SCORING_STOPWORDS = frozenset(
    {
        "a", "an", "the", "and", "or", "but", "if", "then", "than",
        "that", "this", "these", "those", "is", "are", "was", "were",
        "be", "been", "being", "am", "do", "does", "did", "to", "of",
        "in", "on", "at", "by", "for", "with", "as", "from", "it",
        "its", "not", "no", "so",
    }
)


@dataclass
class SummaryRequest:
    """Parameters for one summarization run; fields beyond the selected
    backend's are ignored."""

    backend: str = "extractive"
    target_sentences: int = 5
    chunk_chars: int = 3000
    prompt_template_map: str = DEFAULT_MAP_PROMPT
    prompt_template_reduce: str = DEFAULT_REDUCE_PROMPT

    def validate(self) -> "SummaryRequest":
        if self.backend not in BACKENDS:
            raise InvalidRequest(
                f"unknown summarizer backend {self.backend!r}; "
                f"expected one of {', '.join(BACKENDS)}"
            )
        if self.backend == "extractive" and self.target_sentences < 1:
            raise InvalidRequest("target_sentences must be >= 1")
        if self.backend == "llm_chain":
            if self.chunk_chars < 200:
                raise InvalidRequest("chunk_chars must be >= 200")
            for name, template in (
                ("prompt_template_map", self.prompt_template_map),
                ("prompt_template_reduce", self.prompt_template_reduce),
            ):
                if "{text}" not in template:
                    raise InvalidRequest(f"{name} must contain a {{text}} placeholder")
        return self

    def params(self) -> dict:
        if self.backend == "extractive":
            return {"target_sentences": self.target_sentences}
        return {
            "chunk_chars": self.chunk_chars,
            "prompt_template_map": self.prompt_template_map,
            "prompt_template_reduce": self.prompt_template_reduce,
        }


@dataclass
class Summary:
    summary_id: str
    document_id: str
    text: str
    backend: str
    created_at: str
    params: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        return {
            "summary_id": self.summary_id,
            "document_id": self.document_id,
            "text": self.text,
            "backend": self.backend,
            "created_at": self.created_at,
            "params": self.params,
        }

    @classmethod
    def from_record(cls, record: dict) -> "Summary":
        return cls(
            summary_id=record["summary_id"],
            document_id=record["document_id"],
            text=record["text"],
            backend=record["backend"],
            created_at=record["created_at"],
            params=record.get("params", {}),
        )


class LlmClient(Protocol):
    def complete(self, prompt: str) -> str: ...

    def healthcheck(self) -> dict: ...


class RemoteLlmClient:
    """Client for a remote completion endpoint.

    Wire contract: POST url with {"model": ..., "prompt": ...}; success
    response {"text": ...}. Each call is retried twice with exponential
    backoff starting at ``backoff`` seconds before giving up.
    """

    def __init__(
        self,
        endpoint_url: str,
        model_name: str,
        timeout: float = 30.0,
        backoff: float = 1.0,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.endpoint_url = endpoint_url
        self.model_name = model_name
        self.timeout = timeout
        self.backoff = backoff
        self._sleep = sleep
        self._client = httpx.Client(timeout=timeout)

    def _complete_once(self, prompt: str) -> str:
        try:
            response = self._client.post(
                self.endpoint_url,
                json={"model": self.model_name, "prompt": prompt},
            )
        except httpx.HTTPError as exc:
            raise ProviderUnavailable(f"completion transport failure: {exc}")
        if response.status_code >= 500:
            raise ProviderUnavailable(
                f"completion service returned status {response.status_code}"
            )
        if not 200 <= response.status_code < 300:
            raise ProviderContract(
                f"completion service returned status {response.status_code}"
            )
        try:
            body = response.json()
        except ValueError:
            raise ProviderContract("completion response is not valid JSON")
        text = body.get("text") if isinstance(body, dict) else None
        if not isinstance(text, str):
            raise ProviderContract("completion response lacks a 'text' string")
        return text

    def complete(self, prompt: str) -> str:
        delay = self.backoff
        for attempt in range(LLM_RETRIES + 1):
            try:
                return self._complete_once(prompt)
            except ProviderUnavailable:
                if attempt == LLM_RETRIES:
                    raise
                self._sleep(delay)
                delay *= 2
        raise AssertionError("unreachable")

    def healthcheck(self) -> dict:
        try:
            self._complete_once("healthcheck")
        except (ProviderUnavailable, ProviderContract) as exc:
            return {"status": "error", "detail": str(exc)}
        return {"status": "ok"}

    def close(self) -> None:
        self._client.close()


def extractive_summarize(doc: Document, target_sentences: int = 5) -> Summary:
    """Pick the ``target_sentences`` highest-scoring sentences, in document order.

    A sentence scores the mean document-wide frequency of its tokens, with
    function words excluded from scoring only. Ties break toward the earlier
    sentence.
    """
    if target_sentences < 1:
        raise InvalidRequest("target_sentences must be >= 1")
    if not doc.sentences:
        raise EmptyDocument("document has no sentences")

    freq: dict[str, int] = {}
    for token in tokenize(doc.text):
        if token not in SCORING_STOPWORDS:
            freq[token] = freq.get(token, 0) + 1

    scores: list[float] = []
    for sentence in doc.sentences:
        tokens = [t for t in tokenize(sentence.text) if t not in SCORING_STOPWORDS]
        if tokens:
            scores.append(sum(freq[t] for t in tokens) / len(tokens))
        else:
            scores.append(0.0)

    ranked = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    chosen = sorted(ranked[:target_sentences])
    text = " ".join(doc.sentences[i].text for i in chosen)
    return Summary(
        summary_id=str(uuid.uuid4()),
        document_id=doc.document_id,
        text=text,
        backend="extractive",
        created_at=utc_now_iso(),
        params={"target_sentences": target_sentences},
    )


def _fill(template: str, text: str) -> str:
    return template.replace("{text}", text)


def _map_chunks(chunks: list[Chunk], template: str, llm: LlmClient) -> list[str]:
    if len(chunks) == 1:
        return [llm.complete(_fill(template, chunks[0].text))]
    workers = min(MAX_CONCURRENT_LLM_CALLS, len(chunks))
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(
            executor.map(lambda c: llm.complete(_fill(template, c.text)), chunks)
        )


def llm_chain_summarize(doc: Document, request: SummaryRequest, llm: LlmClient) -> Summary:
    """Map-reduce chain: summarize each chunk, then combine the partials.

    If the concatenated partials still exceed the chunk budget, the reduce
    step recurses on them (bounded depth) before the final combine call.
    """
    request.validate()
    if not doc.sentences:
        raise EmptyDocument("document has no sentences")
    chunks = chunk_text(doc, request.chunk_chars)
    partials = _map_chunks(chunks, request.prompt_template_map, llm)
    combined = "\n\n".join(partials)
    depth = 0
    while len(combined) > request.chunk_chars:
        depth += 1
        if depth > MAX_REDUCE_DEPTH:
            raise ProviderUnavailable(
                f"reduce step did not converge within {MAX_REDUCE_DEPTH} levels",
                retryable=False,
            )
        pieces = chunk_plain_text(combined, request.chunk_chars)
        partials = _map_chunks(pieces, request.prompt_template_reduce, llm)
        combined = "\n\n".join(partials)
    text = llm.complete(_fill(request.prompt_template_reduce, combined))
    if not text.strip():
        raise ProviderContract("completion service produced an empty summary")
    return Summary(
        summary_id=str(uuid.uuid4()),
        document_id=doc.document_id,
        text=text,
        backend="llm_chain",
        created_at=utc_now_iso(),
        params=request.params(),
    )


def summarize(
    doc: Document,
    request: SummaryRequest,
    llm: LlmClient | None = None,
    store=None,
) -> Summary:
    """Dispatch to the requested backend and persist the result."""
    request.validate()
    if request.backend == "extractive":
        summary = extractive_summarize(doc, request.target_sentences)
    else:
        if llm is None:
            raise ProviderUnavailable(
                "llm_chain backend requested but no completion endpoint is configured",
                retryable=False,
            )
        summary = llm_chain_summarize(doc, request, llm)
    if store is not None:
        store.put("summaries", summary.summary_id, summary.to_record())
    return summary
