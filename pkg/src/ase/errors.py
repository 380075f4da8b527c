"""Error hierarchy with stable machine codes shared by the engine, CLI and HTTP API.

Every error carries a ``code`` drawn from a closed set so callers can branch
on codes rather than messages, and an ``http_status`` used by the service
layer. The CLI prints the same codes on stderr.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all domain errors raised by the engine."""

    code = "internal"
    http_status = 500

    def __init__(self, message: str = ""):
        super().__init__(message or self.__class__.__name__)


class InvalidRequest(EngineError):
    code = "invalid_request"
    http_status = 400


class EmptyText(EngineError):
    code = "empty_text"
    http_status = 400


class EmptyUnderstanding(EngineError):
    code = "empty_understanding"
    http_status = 400


class EmptyVector(EngineError):
    code = "empty_vector"
    http_status = 400


class EmptySet(EngineError):
    code = "empty_set"
    http_status = 400


class EmptyTokens(EngineError):
    code = "empty_tokens"
    http_status = 400


class EmptyDocument(EngineError):
    code = "empty_document"
    http_status = 400


class MissingIdfTerm(EngineError):
    code = "missing_idf_term"
    http_status = 400


class DimensionMismatch(EngineError):
    code = "dimension_mismatch"
    http_status = 500


class ZeroMagnitude(EngineError):
    code = "zero_magnitude"
    http_status = 400


class OutOfRange(EngineError):
    code = "out_of_range"
    http_status = 400


class NotFound(EngineError):
    code = "not_found"
    http_status = 404


class SummaryDocumentMismatch(EngineError):
    code = "summary_document_mismatch"
    http_status = 409


class ExtractorFailed(EngineError):
    code = "extractor_failed"
    http_status = 422

    def __init__(self, message: str = "", stderr: str = ""):
        super().__init__(message)
        self.stderr = stderr


class ProviderUnavailable(EngineError):
    code = "provider_unavailable"
    http_status = 502

    def __init__(self, message: str = "", retryable: bool = True):
        super().__init__(message)
        self.retryable = retryable


class ProviderContract(EngineError):
    code = "provider_contract"
    http_status = 502


class ParseError(EngineError):
    code = "parse_error"
    http_status = 400

    def __init__(self, message: str = "", line: int = 0):
        super().__init__(message)
        self.line = line


class DuplicateId(EngineError):
    code = "duplicate_id"
    http_status = 400


class AllEntriesFailed(EngineError):
    code = "all_entries_failed"
    http_status = 500


# The documented closed set. The service and CLI never emit a code outside it.
ERROR_CODES = frozenset(
    {
        "internal",
        "invalid_request",
        "empty_text",
        "empty_understanding",
        "empty_vector",
        "empty_set",
        "empty_tokens",
        "empty_document",
        "missing_idf_term",
        "dimension_mismatch",
        "zero_magnitude",
        "out_of_range",
        "not_found",
        "summary_document_mismatch",
        "extractor_failed",
        "provider_unavailable",
        "provider_contract",
        "parse_error",
        "duplicate_id",
        "all_entries_failed",
    }
)
