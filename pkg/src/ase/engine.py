"""Engine: one object wiring config, store and providers into the pipeline
operations. The CLI and the HTTP service both run through this, so their
scores are identical by construction.
"""

from __future__ import annotations

from . import ingest, scoring, summarize
from .config import EngineConfig
from .embeddings import EmbeddingProvider, build_provider
from .errors import SummaryDocumentMismatch
from .metrics import MetricContext
from .store import Store
from .summarize import LlmClient, RemoteLlmClient, Summary, SummaryRequest
from .textproc import load_stopwords


class Engine:
    def __init__(self, config: EngineConfig):
        self.config = config
        self.store = Store(config.store_root)
        self.embedder: EmbeddingProvider = build_provider(
            config.embedding_kind,
            endpoint_url=config.embedding_url,
            model_name=config.embedding_model,
            dimension=config.embedding_dim,
            timeout=config.embedding_timeout,
            max_chunk_chars=config.max_chunk_chars,
        )
        self.llm: LlmClient | None = None
        if config.llm_url:
            self.llm = RemoteLlmClient(
                endpoint_url=config.llm_url,
                model_name=config.llm_model,
                timeout=config.llm_timeout,
                backoff=config.llm_retry_backoff,
            )
        stopwords = None
        if config.remove_stopwords:
            if config.stopword_file:
                stopwords = load_stopwords(config.stopword_file)
            else:
                stopwords = summarize.SCORING_STOPWORDS
        self.context = MetricContext(embedder=self.embedder, stopwords=stopwords)

    # -- documents ---------------------------------------------------------

    def ingest_text(self, title: str, text: str, source: str = "inline_text") -> ingest.Document:
        return ingest.ingest_text(title, text, store=self.store, source=source)

    def ingest_pdf(self, title: str, pdf_path: str) -> ingest.Document:
        return ingest.ingest_pdf(
            title, pdf_path, self.config.pdf_extractor_command, store=self.store
        )

    def get_document(self, document_id: str) -> ingest.Document:
        return ingest.Document.from_record(self.store.get("documents", document_id))

    def list_documents(self, limit: int | None = None) -> list[dict]:
        return self.store.list_records("documents", limit=limit)

    # -- summaries ----------------------------------------------------------

    def default_summary_request(self) -> SummaryRequest:
        return SummaryRequest(
            backend=self.config.summarizer_backend,
            target_sentences=self.config.target_sentences,
            chunk_chars=self.config.chunk_chars,
        )

    def summarize_document(self, document_id: str, request: SummaryRequest) -> Summary:
        doc = self.get_document(document_id)
        return summarize.summarize(doc, request, llm=self.llm, store=self.store)

    def get_summary(self, summary_id: str) -> Summary:
        return Summary.from_record(self.store.get("summaries", summary_id))

    # -- attempts ------------------------------------------------------------

    def score(
        self,
        document_id: str,
        summary_id: str,
        understanding_text: str,
        headline_metric: str | None = None,
    ) -> scoring.Attempt:
        doc = self.get_document(document_id)
        summary = self.get_summary(summary_id)
        if summary.document_id != doc.document_id:
            raise SummaryDocumentMismatch(
                f"summary {summary_id} does not belong to document {document_id}"
            )
        return scoring.score_attempt(
            doc,
            summary,
            understanding_text,
            context=self.context,
            store=self.store,
            headline_metric=headline_metric or self.config.headline_metric,
        )

    def list_attempts(self, document_id: str, limit: int | None = None) -> list[dict]:
        records = [
            r
            for r in self.store.list_records("attempts")
            if r["document_id"] == document_id
        ]
        return records[:limit] if limit is not None else records

    # -- health --------------------------------------------------------------

    def health(self) -> dict:
        if self.llm is not None:
            llm_status = self.llm.healthcheck()
        else:
            # Nothing remote to probe; the extractive backend needs no LLM.
            llm_status = {"status": "ok", "detail": "not configured"}
        return {
            "store": self.store.healthcheck(),
            "embedding": self.embedder.healthcheck(),
            "llm": llm_status,
        }
