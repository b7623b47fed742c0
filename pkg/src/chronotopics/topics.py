"""Topic modeling: collapsed-Gibbs LDA training, fold-in inference, trends.

Point estimates come from the final Gibbs sample with prior smoothing:

    phi[k][w]   = (n_kw + beta)  / (n_k + V * beta)
    theta[d][k] = (n_dk + alpha) / (n_d + K * alpha)

Training is deterministic for a fixed seed and single-threaded by design
(a parallel sweep would break the determinism contract).  A trained
model is immutable; concurrent fold-in inference on one model is safe.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _gibbs
from .corpus import BowVector, Corpus, Vocabulary

SIMPLEX_TOL = 1e-9


@dataclass(frozen=True)
class TopicModel:
    """Topic-word distributions plus the hyperparameters that produced them.

    `iterations` and `ll_trace` are training metadata; a model loaded
    from a file has iterations=None and an empty trace.
    """

    k: int
    alpha: float
    beta: float
    phi: np.ndarray
    terms: tuple[str, ...]
    seed: int
    iterations: int | None = None
    ll_trace: tuple[tuple[int, float], ...] = ()

    @property
    def vocab_size(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class TopicDistribution:
    """A point on the K-simplex; `from_empty` flags the uniform fallback."""

    theta: np.ndarray
    from_empty: bool = False

    def __len__(self) -> int:
        return len(self.theta)

    def argmax(self) -> int:
        return int(np.argmax(self.theta))


@dataclass(frozen=True)
class TrendSeries:
    """Per-year mean topic probability for one topic, over present years only."""

    topic: int
    mean_theta: dict[int, float] = field(default_factory=dict)


def default_alpha(k: int) -> float:
    """Standard symmetric document-topic prior heuristic, 50/K."""
    return 50.0 / k


def _flatten(bows: list[BowVector]) -> tuple[np.ndarray, np.ndarray]:
    doc_ids: list[np.ndarray] = []
    word_ids: list[np.ndarray] = []
    for d, bow in enumerate(bows):
        n = bow.total_count
        if n == 0:
            continue
        doc_ids.append(np.full(n, d, dtype=np.int32))
        word_ids.append(np.repeat(bow.term_ids, bow.counts).astype(np.int32))
    if not doc_ids:
        return np.empty(0, dtype=np.int32), np.empty(0, dtype=np.int32)
    return np.concatenate(doc_ids), np.concatenate(word_ids)


def _kernel_seed(seed: int) -> int:
    # numba's MT19937 seeding takes a 32-bit value
    return int(seed) & 0xFFFFFFFF


def train_lda(
    corpus_bow: list[BowVector],
    k: int,
    vocab: Vocabulary | list[str],
    *,
    alpha: float | None = None,
    beta: float = 0.01,
    iterations: int = 1000,
    seed: int,
) -> tuple[TopicModel, list[TopicDistribution]]:
    """Train a K-topic LDA model by collapsed Gibbs sampling.

    Documents that are empty take no part in sampling and receive the
    uniform prior-only theta.  Raises if every document is empty or any
    hyperparameter is out of range.
    """
    terms = tuple(vocab.terms if isinstance(vocab, Vocabulary) else vocab)
    v = len(terms)
    if k < 2:
        raise ValueError("k must be >= 2")
    if v < 1:
        raise ValueError("vocabulary must be non-empty")
    if alpha is None:
        alpha = default_alpha(k)
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be positive")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    for bow in corpus_bow:
        if len(bow.term_ids) > 0 and int(bow.term_ids[-1]) >= v:
            raise ValueError("bag-of-words term id out of vocabulary range")

    doc_ids, word_ids = _flatten(corpus_bow)
    if len(doc_ids) == 0:
        raise ValueError("all documents are empty; nothing to train on")
    n_docs = len(corpus_bow)
    n_dk, n_kw, ll_iters, ll_values = _gibbs.train_kernel(
        doc_ids, word_ids, n_docs, k, v, float(alpha), float(beta),
        int(iterations), _kernel_seed(seed),
    )

    n_k = n_kw.sum(axis=1, keepdims=True)
    phi = (n_kw + beta) / (n_k + v * beta)
    n_d = n_dk.sum(axis=1, keepdims=True)
    thetas_mat = (n_dk + alpha) / (n_d + k * alpha)

    model = TopicModel(
        k=k,
        alpha=float(alpha),
        beta=float(beta),
        phi=phi,
        terms=terms,
        iterations=int(iterations),
        seed=int(seed),
        ll_trace=tuple((int(i), float(x)) for i, x in zip(ll_iters, ll_values)),
    )
    thetas = [
        TopicDistribution(theta=thetas_mat[d], from_empty=corpus_bow[d].is_empty())
        for d in range(n_docs)
    ]
    return model, thetas


def infer_theta(
    model: TopicModel, doc: BowVector, *, iterations: int = 1000, seed: int
) -> TopicDistribution:
    """Fold-in Gibbs inference of theta for one document, phi held fixed.

    An empty document has a prior-only posterior: the uniform vector is
    returned with `from_empty` set and a warning emitted.
    """
    if len(doc.term_ids) > 0 and int(doc.term_ids[-1]) >= model.vocab_size:
        raise ValueError("document term id out of the model's vocabulary range")
    k = model.k
    if doc.is_empty():
        warnings.warn("empty document: returning uniform topic distribution")
        return TopicDistribution(theta=np.full(k, 1.0 / k), from_empty=True)
    word_ids = np.repeat(doc.term_ids, doc.counts).astype(np.int32)
    n_k = _gibbs.fold_in_kernel(
        word_ids, model.phi, float(model.alpha), int(iterations), _kernel_seed(seed)
    )
    theta = (n_k + model.alpha) / (len(word_ids) + k * model.alpha)
    return TopicDistribution(theta=theta)


def top_words(model: TopicModel, topic: int, n: int) -> list[tuple[str, float]]:
    """The n highest-probability terms of a topic, ties broken lexicographically."""
    if not 0 <= topic < model.k:
        raise ValueError(f"topic {topic} out of range [0, {model.k})")
    if n < 1:
        raise ValueError("n must be >= 1")
    row = model.phi[topic]
    order = sorted(range(model.vocab_size), key=lambda w: (-row[w], model.terms[w]))
    return [(model.terms[w], float(row[w])) for w in order[:n]]


def topic_trends(thetas: list[TopicDistribution], corpus: Corpus) -> list[TrendSeries]:
    """Per-year mean of theta[k] over each present year's documents."""
    if len(thetas) != len(corpus):
        raise ValueError("need exactly one topic distribution per document")
    k = len(thetas[0])
    mat = np.stack([t.theta for t in thetas])
    years = np.array([d.year for d in corpus.documents])
    by_year = {y: mat[years == y].mean(axis=0) for y in corpus.present_years}
    return [
        TrendSeries(topic=t, mean_theta={y: float(by_year[y][t]) for y in corpus.present_years})
        for t in range(k)
    ]


def write_trends_csv(trends: list[TrendSeries], path: str) -> None:
    """Trend export: one row per (topic, year), header `topic,year,mean_theta`."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["topic", "year", "mean_theta"])
        for series in trends:
            for year in sorted(series.mean_theta):
                writer.writerow([series.topic, year, f"{series.mean_theta[year]:.12g}"])
