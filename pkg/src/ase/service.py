"""HTTP API over the engine: document ingestion, summarization, attempt
scoring, listings and health. JSON in, JSON out; errors carry a machine code
from the documented closed set.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .engine import Engine
from .errors import EngineError, InvalidRequest
from .scoring import Attempt, format_percent, interpret
from .summarize import SummaryRequest


class DocumentCreate(BaseModel):
    title: str = ""
    text: str | None = None
    pdf_path: str | None = None


class SummaryCreate(BaseModel):
    backend: str | None = None
    target_sentences: int | None = None
    chunk_chars: int | None = None
    prompt_template_map: str | None = None
    prompt_template_reduce: str | None = None


class AttemptCreate(BaseModel):
    summary_id: str
    understanding_text: str
    headline_metric: str | None = None


def attempt_payload(attempt: Attempt) -> dict:
    """Store record plus the display fields the UI must not derive itself."""
    record = attempt.to_record()
    record["comprehension_display"] = format_percent(attempt.comprehension_percent / 100.0)
    record["band"] = interpret(attempt.comprehension_percent)
    return record


def create_app(engine: Engine) -> FastAPI:
    app = FastAPI(title="ase", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(EngineError)
    async def engine_error_handler(_request: Request, exc: EngineError):
        return JSONResponse(
            status_code=exc.http_status,
            content={"code": exc.code, "message": str(exc)},
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"code": "invalid_request", "message": str(exc.errors()[:1])},
        )

    @app.post("/api/documents", status_code=201)
    def create_document(body: DocumentCreate):
        has_text = body.text is not None
        has_pdf = body.pdf_path is not None
        if has_text == has_pdf:
            raise InvalidRequest("provide exactly one of text or pdf_path")
        if has_text:
            doc = engine.ingest_text(body.title, body.text or "")
        else:
            doc = engine.ingest_pdf(body.title, body.pdf_path or "")
        return {"document_id": doc.document_id}

    @app.get("/api/documents")
    def list_documents(limit: int | None = None):
        return engine.list_documents(limit=limit)

    @app.get("/api/documents/{document_id}")
    def get_document(document_id: str):
        return engine.store.get("documents", document_id)

    @app.post("/api/documents/{document_id}/summaries", status_code=201)
    def create_summary(document_id: str, body: SummaryCreate):
        defaults = engine.default_summary_request()

        def pick(value, default):
            return default if value is None else value

        request = SummaryRequest(
            backend=pick(body.backend, defaults.backend),
            target_sentences=pick(body.target_sentences, defaults.target_sentences),
            chunk_chars=pick(body.chunk_chars, defaults.chunk_chars),
            prompt_template_map=pick(body.prompt_template_map, defaults.prompt_template_map),
            prompt_template_reduce=pick(
                body.prompt_template_reduce, defaults.prompt_template_reduce
            ),
        ).validate()
        summary = engine.summarize_document(document_id, request)
        return {"summary_id": summary.summary_id, "text": summary.text}

    @app.post("/api/documents/{document_id}/attempts", status_code=201)
    def create_attempt(document_id: str, body: AttemptCreate):
        attempt = engine.score(
            document_id,
            body.summary_id,
            body.understanding_text,
            headline_metric=body.headline_metric,
        )
        return attempt_payload(attempt)

    @app.get("/api/documents/{document_id}/attempts")
    def list_attempts(document_id: str, limit: int | None = None):
        engine.store.get("documents", document_id)  # 404 for unknown ids
        payloads = []
        for record in engine.list_attempts(document_id, limit=limit):
            payloads.append(attempt_payload(Attempt.from_record(record)))
        return payloads

    @app.get("/api/health")
    def health():
        return engine.health()

    return app
