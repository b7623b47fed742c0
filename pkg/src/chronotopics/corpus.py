"""Timestamped document corpora: ingestion, tokenization, vocabulary, bag-of-words.

The on-disk corpus format is JSON Lines, one object per line with fields
``id`` (string), ``year`` (integer) and ``text`` (string); unknown fields
are ignored.  Text is assumed to be already extracted plain text.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

YEAR_MIN = 1000
YEAR_MAX = 3000

_ALPHA_RUN = re.compile(r"[^\W\d_]+", re.UNICODE)


def load_stopwords(path: str | None = None) -> frozenset[str]:
    """Load a stopword list (one token per line, lowercased on read).

    With no path, returns the bundled English list (Glasgow IR stopwords).
    """
    if path is None:
        text = resources.files("chronotopics.data").joinpath("stopwords.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


@dataclass(frozen=True)
class TokenizerOptions:
    """Settings shared by tokenize/vectorize; vocabulary and vectors must use the same."""

    min_len: int = 3
    stopwords: frozenset[str] = field(default_factory=load_stopwords)


@dataclass(frozen=True)
class Document:
    id: str
    year: int
    text: str

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("document id must be non-empty")
        if not YEAR_MIN <= self.year <= YEAR_MAX:
            raise ValueError(
                f"document {self.id!r}: year {self.year} outside sanity bound "
                f"[{YEAR_MIN}, {YEAR_MAX}]"
            )


class Corpus:
    """An ordered document collection with its year range and present years.

    ``year_begin``/``year_end`` are the min/max document years and
    ``present_years`` the sorted distinct years actually observed.
    Immutable after construction; safe to share across threads.
    """

    def __init__(self, documents: list[Document]):
        if not documents:
            raise ValueError("corpus must contain at least one document")
        seen: dict[str, int] = {}
        for pos, doc in enumerate(documents):
            if doc.id in seen:
                raise ValueError(
                    f"duplicate document id {doc.id!r} (documents {seen[doc.id]} and {pos})"
                )
            seen[doc.id] = pos
        self.documents: tuple[Document, ...] = tuple(documents)
        years = [d.year for d in documents]
        self.year_begin: int = min(years)
        self.year_end: int = max(years)
        self.present_years: tuple[int, ...] = tuple(sorted(set(years)))

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def documents_in_year(self, year: int) -> list[Document]:
        return [d for d in self.documents if d.year == year]

    def year_counts(self) -> dict[int, int]:
        counts = {y: 0 for y in self.present_years}
        for d in self.documents:
            counts[d.year] += 1
        return counts


class Vocabulary:
    """Lexicographically ordered term list with document frequencies."""

    def __init__(self, terms: list[str], doc_freq: dict[str, int]):
        self.terms: tuple[str, ...] = tuple(terms)
        self.index: dict[str, int] = {t: i for i, t in enumerate(terms)}
        self.doc_freq: dict[str, int] = dict(doc_freq)

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.index


@dataclass(frozen=True)
class BowVector:
    """Sparse term-count vector: strictly increasing term ids, counts >= 1."""

    term_ids: np.ndarray
    counts: np.ndarray

    def __post_init__(self) -> None:
        if self.term_ids.shape != self.counts.shape:
            raise ValueError("term_ids and counts must have equal length")
        if len(self.term_ids) > 0:
            if np.any(np.diff(self.term_ids) <= 0):
                raise ValueError("term ids must be strictly increasing")
            if np.any(self.counts < 1):
                raise ValueError("counts must all be >= 1")

    @property
    def total_count(self) -> int:
        return int(self.counts.sum())

    def is_empty(self) -> bool:
        return len(self.term_ids) == 0


def tokenize(text: str, opts: TokenizerOptions | None = None) -> list[str]:
    """Lowercased maximal alphabetic runs, length-filtered, stopwords removed.

    Any non-alphabetic character (digits and underscore included) splits a
    run, so "LDA2000 topic-model" yields ["lda", "topic", "model"].
    Deterministic; empty output is allowed.
    """
    if opts is None:
        opts = TokenizerOptions()
    tokens = _ALPHA_RUN.findall(text.lower())
    return [t for t in tokens if len(t) >= opts.min_len and t not in opts.stopwords]


def ingest_jsonl(path: str) -> Corpus:
    """Read a JSON-Lines corpus file, preserving document order.

    Raises ValueError naming the offending line for malformed records,
    duplicate ids, out-of-range years, or an empty corpus.
    """
    documents: list[Document] = []
    first_line: dict[str, int] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}: line {lineno}: malformed JSON: {exc.msg}") from exc
            if not isinstance(record, dict):
                raise ValueError(f"{path}: line {lineno}: record is not an object")
            for key, types in (("id", str), ("year", int), ("text", str)):
                if key not in record:
                    raise ValueError(f"{path}: line {lineno}: missing field {key!r}")
                if not isinstance(record[key], types) or isinstance(record[key], bool):
                    raise ValueError(f"{path}: line {lineno}: field {key!r} has wrong type")
            doc_id = record["id"]
            if doc_id in first_line:
                raise ValueError(
                    f"{path}: duplicate document id {doc_id!r} "
                    f"(lines {first_line[doc_id]} and {lineno})"
                )
            first_line[doc_id] = lineno
            try:
                documents.append(Document(id=doc_id, year=record["year"], text=record["text"]))
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from exc
    if not documents:
        raise ValueError(f"{path}: empty corpus")
    return Corpus(documents)


def write_jsonl(corpus: Corpus, path: str) -> None:
    """Serialize a corpus back to JSON Lines (inverse of ingest_jsonl)."""
    with open(path, "w", encoding="utf-8") as f:
        for doc in corpus:
            f.write(json.dumps({"id": doc.id, "year": doc.year, "text": doc.text}) + "\n")


def build_vocabulary(
    corpus: Corpus, min_df: int = 1, opts: TokenizerOptions | None = None
) -> Vocabulary:
    """Terms with document frequency >= min_df, sorted lexicographically.

    Document frequency counts documents containing the term, not occurrences.
    Lexicographic ordering makes the build independent of document order.
    """
    if min_df < 1:
        raise ValueError("min_df must be >= 1")
    if opts is None:
        opts = TokenizerOptions()
    df: dict[str, int] = {}
    for doc in corpus:
        for term in set(tokenize(doc.text, opts)):
            df[term] = df.get(term, 0) + 1
    kept = sorted(t for t, n in df.items() if n >= min_df)
    if not kept:
        raise ValueError(f"empty vocabulary: no term reaches min_df={min_df}")
    return Vocabulary(kept, {t: df[t] for t in kept})


def vectorize(doc: Document, vocab: Vocabulary, opts: TokenizerOptions | None = None) -> BowVector:
    """Count in-vocabulary tokens of a document; OOV tokens are dropped silently."""
    counts: dict[int, int] = {}
    for term in tokenize(doc.text, opts):
        tid = vocab.index.get(term)
        if tid is not None:
            counts[tid] = counts.get(tid, 0) + 1
    ids = sorted(counts)
    return BowVector(
        term_ids=np.array(ids, dtype=np.int32),
        counts=np.array([counts[i] for i in ids], dtype=np.int64),
    )
