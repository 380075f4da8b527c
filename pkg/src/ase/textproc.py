"""Deterministic text normalization, tokenization and sentence splitting.

Everything here is a pure function: no models, no caches, no locale
dependence. These primitives feed the similarity metrics, so determinism
matters more than linguistic sophistication.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Collection, Iterable, Iterator, Mapping

from .errors import MissingIdfTerm

_WHITESPACE_RE = re.compile(r"\s+")
# Maximal runs of Unicode letters/digits; apostrophes kept word-internally
# (straight U+0027 and curly U+2019) so contractions stay one token.
_TOKEN_RE = re.compile(r"[^\W_]+(?:['’][^\W_]+)*")

_SENTENCE_TERMINATORS = ".!?"
# A trailing period after these does not end a sentence.
_ABBREVIATIONS = frozenset({"e.g.", "i.e.", "etc.", "dr.", "mr.", "ms.", "vs."})


@dataclass(frozen=True)
class TokenSequence:
    """Ordered tokens extracted from one source text."""

    tokens: tuple[str, ...]
    source_length: int

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    def __bool__(self) -> bool:
        return bool(self.tokens)


@dataclass(frozen=True)
class Sentence:
    """Original-casing substring of the source with its character offsets."""

    text: str
    start: int
    end: int


def normalize(raw: str) -> str:
    """NFKC-normalize, lowercase, collapse whitespace runs, strip ends."""
    if not raw:
        return ""
    text = unicodedata.normalize("NFKC", raw).lower()
    return _WHITESPACE_RE.sub(" ", text).strip()


def tokenize(raw: str, stopwords: Collection[str] | None = None) -> TokenSequence:
    """Extract word tokens from the normalized form of ``raw``.

    Tokens are maximal letter/digit runs with word-internal apostrophes kept;
    punctuation is discarded. ``stopwords`` (already-normalized words), when
    given, are removed; by default nothing is removed.
    """
    tokens = _TOKEN_RE.findall(normalize(raw))
    if stopwords:
        tokens = [t for t in tokens if t not in stopwords]
    return TokenSequence(tokens=tuple(tokens), source_length=len(raw))


def to_token_set(seq: TokenSequence) -> frozenset[str]:
    return frozenset(seq.tokens)


def to_term_vector(
    seq: TokenSequence, idf: Mapping[str, float] | None = None
) -> dict[str, float]:
    """Term-frequency weights, optionally reweighted by a caller-supplied idf map.

    Raises MissingIdfTerm if ``idf`` is given but lacks a token present in
    ``seq``: silent zero weights would corrupt the cosine denominator.
    """
    counts: dict[str, float] = {}
    for token in seq.tokens:
        counts[token] = counts.get(token, 0.0) + 1.0
    if idf is None:
        return counts
    weights: dict[str, float] = {}
    for token, count in counts.items():
        if token not in idf:
            raise MissingIdfTerm(f"idf map lacks term {token!r}")
        weights[token] = count * idf[token]
    return weights


def split_sentences(raw: str) -> list[Sentence]:
    """Split on '.', '!', '?' followed by whitespace-or-end, guarding abbreviations.

    A text with no terminator is a single sentence. Offsets index into the
    raw source; sentence text keeps its original casing.
    """
    sentences: list[Sentence] = []
    n = len(raw)
    start: int | None = None
    for i, ch in enumerate(raw):
        if start is None:
            if ch.isspace():
                continue
            start = i
        if ch in _SENTENCE_TERMINATORS and (i + 1 >= n or raw[i + 1].isspace()):
            if ch == "." and _is_abbreviation(raw, i):
                continue
            sentences.append(Sentence(text=raw[start : i + 1], start=start, end=i + 1))
            start = None
    if start is not None:
        end = n
        while end > start and raw[end - 1].isspace():
            end -= 1
        sentences.append(Sentence(text=raw[start:end], start=start, end=end))
    return sentences


def _is_abbreviation(raw: str, dot_index: int) -> bool:
    j = dot_index
    while j > 0 and not raw[j - 1].isspace():
        j -= 1
    return raw[j : dot_index + 1].lower() in _ABBREVIATIONS


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Load a newline-delimited stopword file, normalizing each entry."""
    words: set[str] = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        word = normalize(line)
        if word:
            words.add(word)
    return frozenset(words)


def iter_token_counts(tokens: Iterable[str]) -> dict[str, int]:
    """Count occurrences, preserving nothing but the multiset."""
    counts: dict[str, int] = {}
    for token in tokens:
        counts[token] = counts.get(token, 0) + 1
    return counts
