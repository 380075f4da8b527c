"""Embedding providers: a remote transformer-embedding client for real use and
a deterministic hashed-PRNG double so the whole pipeline runs offline.

The deterministic provider is pinned bit-exactly (FNV-1a 64 token hash,
splitmix64 stream, fixed [-1, 1) mapping) so golden vectors stay stable
across runs and platforms.
"""

from __future__ import annotations

import math
import threading
from typing import Iterable, Protocol

import httpx

from .errors import (
    EmptyText,
    EmptyTokens,
    ProviderContract,
    ProviderUnavailable,
)
from .ingest import chunk_plain_text
from .textproc import TokenSequence, iter_token_counts, tokenize

_MASK64 = (1 << 64) - 1
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15

DEFAULT_DIMENSION = 64
DEFAULT_MAX_CHUNK_CHARS = 3000
DEFAULT_TIMEOUT_SECONDS = 30.0
MAX_IN_FLIGHT_REQUESTS = 4


def fnv1a_64(data: bytes) -> int:
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK64
    return h


def _splitmix64_stream(seed: int, count: int) -> list[float]:
    """``count`` uniform values in [-1, 1) from the splitmix64 sequence at ``seed``."""
    state = seed & _MASK64
    values: list[float] = []
    for _ in range(count):
        state = (state + _SPLITMIX_GAMMA) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        z ^= z >> 31
        values.append((z >> 11) * 2.0**-53 * 2.0 - 1.0)
    return values


def _embed_counts(
    counts: dict[str, int], dimension: int, cache: dict[str, list[float]] | None = None
) -> tuple[float, ...]:
    """L2-normalized sum of count-weighted per-token hash vectors.

    Depends only on the token multiset: accumulation runs in sorted token
    order so float summation cannot observe input order.
    """
    acc = [0.0] * dimension
    for token in sorted(counts):
        vec = cache.get(token) if cache is not None else None
        if vec is None:
            vec = _splitmix64_stream(fnv1a_64(token.encode("utf-8")), dimension)
            if cache is not None:
                cache[token] = vec
        count = counts[token]
        for i in range(dimension):
            acc[i] += count * vec[i]
    norm = math.sqrt(math.fsum(x * x for x in acc))
    if norm == 0.0:
        # astronomically unlikely cancellation; keep the contract total
        raise EmptyTokens("token vectors cancelled to zero")
    return tuple(x / norm for x in acc)


def deterministic_embed(
    tokens: TokenSequence | Iterable[str], dimension: int = DEFAULT_DIMENSION
) -> tuple[float, ...]:
    counts = iter_token_counts(tokens)
    if not counts:
        raise EmptyTokens("cannot embed an empty token sequence")
    return _embed_counts(counts, dimension)


class EmbeddingProvider(Protocol):
    kind: str
    max_chunk_chars: int

    def embed(self, text: str) -> tuple[float, ...]: ...

    def healthcheck(self) -> dict: ...


class DeterministicEmbeddingProvider:
    """Offline provider: pure function of the token multiset."""

    kind = "deterministic"

    def __init__(
        self,
        dimension: int = DEFAULT_DIMENSION,
        max_chunk_chars: int = DEFAULT_MAX_CHUNK_CHARS,
    ):
        if dimension < 1:
            raise ValueError("dimension must be positive")
        self.dimension = dimension
        self.max_chunk_chars = max_chunk_chars
        self._token_cache: dict[str, list[float]] = {}

    def embed(self, text: str) -> tuple[float, ...]:
        counts = iter_token_counts(tokenize(text))
        if not counts:
            raise EmptyTokens("text tokenized to nothing")
        return _embed_counts(counts, self.dimension, cache=self._token_cache)

    def healthcheck(self) -> dict:
        return {"status": "ok"}


class RemoteEmbeddingProvider:
    """HTTP client for an external embedding service.

    Wire contract: POST endpoint_url with {"model": ..., "input": text};
    success response {"embedding": [real, ...]}. Validates finiteness and a
    consistent dimension across the session. In-flight requests are bounded.
    """

    kind = "remote"

    def __init__(
        self,
        endpoint_url: str,
        model_name: str,
        timeout: float = DEFAULT_TIMEOUT_SECONDS,
        max_chunk_chars: int = DEFAULT_MAX_CHUNK_CHARS,
    ):
        self.endpoint_url = endpoint_url
        self.model_name = model_name
        self.timeout = timeout
        self.max_chunk_chars = max_chunk_chars
        self._client = httpx.Client(timeout=timeout)
        self._semaphore = threading.BoundedSemaphore(MAX_IN_FLIGHT_REQUESTS)
        self._dimension: int | None = None
        self._dimension_lock = threading.Lock()

    def embed(self, text: str) -> tuple[float, ...]:
        with self._semaphore:
            try:
                response = self._client.post(
                    self.endpoint_url,
                    json={"model": self.model_name, "input": text},
                )
            except httpx.TimeoutException as exc:
                raise ProviderUnavailable(f"embedding request timed out: {exc}")
            except httpx.HTTPError as exc:
                raise ProviderUnavailable(f"embedding transport failure: {exc}")
        if response.status_code >= 500:
            raise ProviderUnavailable(
                f"embedding service returned status {response.status_code}"
            )
        if not 200 <= response.status_code < 300:
            raise ProviderContract(
                f"embedding service returned status {response.status_code}"
            )
        try:
            body = response.json()
        except ValueError:
            raise ProviderContract("embedding response is not valid JSON")
        values = body.get("embedding") if isinstance(body, dict) else None
        if not isinstance(values, list) or not values:
            raise ProviderContract("embedding response lacks an 'embedding' list")
        components: list[float] = []
        for value in values:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ProviderContract("embedding component is not a number")
            value = float(value)
            if not math.isfinite(value):
                raise ProviderContract("embedding component is not finite")
            components.append(value)
        with self._dimension_lock:
            if self._dimension is None:
                self._dimension = len(components)
            elif self._dimension != len(components):
                raise ProviderContract(
                    f"embedding dimension changed from {self._dimension} "
                    f"to {len(components)} within one session"
                )
        return tuple(components)

    def healthcheck(self) -> dict:
        try:
            self.embed("healthcheck")
        except (ProviderUnavailable, ProviderContract) as exc:
            return {"status": "error", "detail": str(exc)}
        return {"status": "ok"}

    def close(self) -> None:
        self._client.close()


def embed_text(provider: EmbeddingProvider, text: str) -> tuple[float, ...]:
    """Embed ``text``, mean-pooling sentence-aligned chunks when it is long.

    Texts within the provider's chunk budget embed in one call; longer texts
    are chunked, embedded per chunk, and combined as the L2-normalized
    arithmetic mean of the chunk vectors.
    """
    if not tokenize(text):
        raise EmptyText("cannot embed text that tokenizes to nothing")
    if len(text) <= provider.max_chunk_chars:
        return provider.embed(text)
    chunks = chunk_plain_text(text, provider.max_chunk_chars)
    vectors = [provider.embed(chunk.text) for chunk in chunks]
    dimension = len(vectors[0])
    for vec in vectors[1:]:
        if len(vec) != dimension:
            raise ProviderContract("chunk embeddings disagree on dimension")
    mean = [
        math.fsum(vec[i] for vec in vectors) / len(vectors) for i in range(dimension)
    ]
    norm = math.sqrt(math.fsum(x * x for x in mean))
    if norm == 0.0:
        raise ProviderContract("chunk embeddings cancelled to a zero vector")
    return tuple(x / norm for x in mean)


def provider_healthcheck(provider: EmbeddingProvider) -> dict:
    return provider.healthcheck()


def build_provider(
    kind: str,
    *,
    endpoint_url: str = "",
    model_name: str = "",
    dimension: int = DEFAULT_DIMENSION,
    timeout: float = DEFAULT_TIMEOUT_SECONDS,
    max_chunk_chars: int = DEFAULT_MAX_CHUNK_CHARS,
) -> EmbeddingProvider:
    if kind == "deterministic":
        return DeterministicEmbeddingProvider(
            dimension=dimension, max_chunk_chars=max_chunk_chars
        )
    if kind == "remote":
        if not endpoint_url:
            raise ValueError("remote embedding provider requires endpoint_url")
        return RemoteEmbeddingProvider(
            endpoint_url=endpoint_url,
            model_name=model_name,
            timeout=timeout,
            max_chunk_chars=max_chunk_chars,
        )
    raise ValueError(f"unknown embedding provider kind: {kind!r}")
