"""Synthetic corpora with planted topic epochs, for end-to-end validation.

Documents follow the standard LDA generative process: each token first
draws a topic from its year's mixture, then a word from that topic's
distribution.  Epochs are contiguous, non-overlapping year ranges each
carrying its own topic mixture; the years where one epoch hands over
to the next are the planted ground truth a turnaround-year detector
should recover.

Transitions are abrupt by default.  With blend_width w > 0, the
mixture of a year within w years of an epoch boundary B interpolates
linearly between the two adjacent epochs' mixtures along the ramp
u = clamp((year - B + w + 0.5) / (2w), 0, 1).

Epoch specification file (`#` comments allowed), one key per line:

    seed 7
    topics 6
    words-per-topic 20
    blend-width 0
    doc-noise 30          # optional Dirichlet concentration, see generate()
    epoch <start> <end> <docs-per-year> <doc-length> [preview] <m_0> ... <m_{K-1}>

An epoch line may carry a second mixture after a literal `to`, making
the epoch crossfade from the first mixture to the second across its
years (within-epoch drift); a literal `preview` before the mixture
marks the epoch's first year as an onset year.
"""

from __future__ import annotations

from dataclasses import dataclass
from string import ascii_lowercase

import numpy as np

from .corpus import Corpus, Document

MIXTURE_TOL = 1e-9


@dataclass(frozen=True)
class EpochSpec:
    """One epoch: inclusive year range, topic mixture, and corpus sizing.

    With `end_mixture` set, the per-year mixture crossfades linearly
    from `mixture` to `end_mixture` across the epoch's years, modeling
    within-epoch drift (a topic declining while another rises);
    otherwise the epoch is stationary.  With `preview`, the epoch's
    first year is an onset year: each of its documents samples its own
    position uniformly along the whole drift path, anticipating
    content the following years settle into, and the year-to-position
    drift mapping starts at the second year.
    """

    start: int
    end: int
    mixture: np.ndarray
    docs_per_year: int = 20
    doc_length: int = 100
    end_mixture: np.ndarray | None = None
    preview: bool = False

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError(f"epoch start {self.start} > end {self.end}")
        if self.docs_per_year < 1 or self.doc_length < 1:
            raise ValueError("docs_per_year and doc_length must be >= 1")
        for m in (self.mixture, self.end_mixture):
            if m is None:
                continue
            m = np.asarray(m, dtype=np.float64)
            if np.any(m < 0) or abs(m.sum() - 1.0) > MIXTURE_TOL:
                raise ValueError("epoch mixture must lie on the probability simplex")
        if self.end_mixture is not None and len(self.end_mixture) != len(self.mixture):
            raise ValueError("end_mixture dimension must match mixture")

    @property
    def years(self) -> range:
        return range(self.start, self.end + 1)

    def drift_position(self, year: int) -> float:
        """Position in [0, 1] along the mixture -> end_mixture segment."""
        drift_start = self.start + (1 if self.preview else 0)
        if self.end_mixture is None or year <= drift_start:
            return 0.0
        return min((year - drift_start) / max(self.end - drift_start, 1), 1.0)

    def mixture_at(self, year: int) -> np.ndarray:
        """The epoch's own mixture at `year`, before any boundary blending."""
        start_mix = np.asarray(self.mixture, dtype=np.float64)
        if self.end_mixture is None:
            return start_mix
        p = self.drift_position(year)
        return (1.0 - p) * start_mix + p * np.asarray(self.end_mixture, dtype=np.float64)


@dataclass(frozen=True)
class SyntheticTruth:
    """Planted ground truth: the start year of every epoch after the first."""

    boundary_years: tuple[int, ...]
    epochs: tuple[EpochSpec, ...]
    seed: int


def synthetic_term(index: int, length: int = 5) -> str:
    """Deterministic purely-alphabetic token for vocabulary slot `index`."""
    letters = []
    for _ in range(length):
        index, r = divmod(index, 26)
        letters.append(ascii_lowercase[r])
    return "".join(reversed(letters))


def disjoint_topic_word(k: int, words_per_topic: int) -> tuple[np.ndarray, list[str]]:
    """K topics over disjoint vocabulary blocks, uniform within each block."""
    if k < 1 or words_per_topic < 1:
        raise ValueError("k and words_per_topic must be >= 1")
    v = k * words_per_topic
    topic_word = np.zeros((k, v))
    for t in range(k):
        topic_word[t, t * words_per_topic : (t + 1) * words_per_topic] = 1.0 / words_per_topic
    terms = [synthetic_term(i) for i in range(v)]
    return topic_word, terms


def _year_mixture(epochs: list[EpochSpec], epoch_idx: int, year: int, blend_width: int) -> np.ndarray:
    mix = epochs[epoch_idx].mixture_at(year)
    if blend_width <= 0:
        return mix
    w = float(blend_width)
    # ramp toward the next epoch across its start year
    if epoch_idx + 1 < len(epochs):
        b = epochs[epoch_idx + 1].start
        u = np.clip((year - b + w + 0.5) / (2.0 * w), 0.0, 1.0)
        if u > 0.0:
            return (1.0 - u) * mix + u * epochs[epoch_idx + 1].mixture_at(year)
    # ramp away from the previous epoch across this epoch's start year
    if epoch_idx > 0:
        b = epochs[epoch_idx].start
        u = np.clip((year - b + w + 0.5) / (2.0 * w), 0.0, 1.0)
        if u < 1.0:
            return u * mix + (1.0 - u) * epochs[epoch_idx - 1].mixture_at(year)
    return mix


def generate(
    epochs: list[EpochSpec],
    topic_word: np.ndarray,
    terms: list[str],
    seed: int,
    blend_width: int = 0,
    doc_concentration: float | None = None,
) -> tuple[Corpus, SyntheticTruth]:
    """Sample a corpus from the planted epoch structure.

    Epochs must be contiguous and non-overlapping in order; topic_word
    rows must be simplex distributions matching the mixture dimension.
    By default every document of a year shares that year's mixture
    exactly; with `doc_concentration` set, each document instead draws
    its own topic weights from Dirichlet(doc_concentration * mixture),
    adding within-year diversity.  Deterministic for a fixed seed
    (PCG64).
    """
    if not epochs:
        raise ValueError("need at least one epoch")
    for prev, cur in zip(epochs, epochs[1:]):
        if cur.start != prev.end + 1:
            raise ValueError(
                f"epochs must be contiguous and non-overlapping: "
                f"[..., {prev.end}] then [{cur.start}, ...]"
            )
    k, v = topic_word.shape
    if len(terms) != v:
        raise ValueError("terms must match topic_word columns")
    if np.any(topic_word < 0) or np.any(np.abs(topic_word.sum(axis=1) - 1.0) > MIXTURE_TOL):
        raise ValueError("topic_word rows must lie on the probability simplex")
    for e in epochs:
        if len(e.mixture) != k:
            raise ValueError("epoch mixture dimension must match topic_word rows")

    if doc_concentration is not None and doc_concentration <= 0:
        raise ValueError("doc_concentration must be positive")

    rng = np.random.Generator(np.random.PCG64(seed))
    documents: list[Document] = []
    for ei, epoch in enumerate(epochs):
        for year in epoch.years:
            is_preview = epoch.preview and year == epoch.start and epoch.end_mixture is not None
            mixture = _year_mixture(epochs, ei, year, blend_width)
            mixture = mixture / mixture.sum()
            for d in range(epoch.docs_per_year):
                if is_preview:
                    u = rng.uniform()
                    weights = (1.0 - u) * np.asarray(epoch.mixture) + u * np.asarray(epoch.end_mixture)
                    weights = weights / weights.sum()
                else:
                    weights = mixture
                if doc_concentration is not None:
                    weights = rng.dirichlet(np.maximum(doc_concentration * weights, 1e-9))
                topics = rng.choice(k, size=epoch.doc_length, p=weights)
                words = [
                    terms[rng.choice(v, p=topic_word[t])]
                    for t in topics
                ]
                documents.append(
                    Document(id=f"y{year}d{d:04d}", year=year, text=" ".join(words))
                )
    truth = SyntheticTruth(
        boundary_years=tuple(e.start for e in epochs[1:]),
        epochs=tuple(epochs),
        seed=seed,
    )
    return Corpus(documents), truth


@dataclass(frozen=True)
class SynthSpec:
    """A parsed epoch specification file."""

    epochs: tuple[EpochSpec, ...]
    topic_word: np.ndarray
    terms: tuple[str, ...]
    seed: int
    blend_width: int
    doc_concentration: float | None


def parse_epoch_spec(path: str) -> SynthSpec:
    """Read an epoch specification file.

    The topic-word matrix uses disjoint uniform blocks of
    `words-per-topic` terms per topic.
    """
    seed = 0
    k: int | None = None
    words_per_topic = 20
    blend_width = 0
    doc_concentration: float | None = None
    epoch_rows: list[tuple[int, int, int, int, bool, list[float], list[float] | None]] = []
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, *rest = line.split()
            try:
                if key == "seed":
                    (seed,) = (int(rest[0]),)
                elif key == "topics":
                    k = int(rest[0])
                elif key == "words-per-topic":
                    words_per_topic = int(rest[0])
                elif key == "blend-width":
                    blend_width = int(rest[0])
                elif key == "doc-noise":
                    doc_concentration = float(rest[0])
                elif key == "epoch":
                    start, end, dpy, dlen = (int(x) for x in rest[:4])
                    tail = rest[4:]
                    preview = tail and tail[0] == "preview"
                    if preview:
                        tail = tail[1:]
                    if "to" in tail:
                        sep = tail.index("to")
                        mixture = [float(x) for x in tail[:sep]]
                        end_mixture = [float(x) for x in tail[sep + 1 :]]
                    else:
                        mixture = [float(x) for x in tail]
                        end_mixture = None
                    epoch_rows.append((start, end, dpy, dlen, bool(preview), mixture, end_mixture))
                else:
                    raise ValueError(f"unknown key {key!r}")
            except (IndexError, ValueError) as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from exc
    if k is None:
        raise ValueError(f"{path}: missing 'topics' line")
    if not epoch_rows:
        raise ValueError(f"{path}: no epochs defined")
    topic_word, terms = disjoint_topic_word(k, words_per_topic)
    epochs = tuple(
        EpochSpec(
            start=s, end=e, mixture=np.array(m), docs_per_year=dpy, doc_length=dlen,
            end_mixture=None if em is None else np.array(em), preview=pv,
        )
        for s, e, dpy, dlen, pv, m, em in epoch_rows
    )
    return SynthSpec(
        epochs=epochs,
        topic_word=topic_word,
        terms=tuple(terms),
        seed=seed,
        blend_width=blend_width,
        doc_concentration=doc_concentration,
    )


def write_truth(truth: SyntheticTruth, path: str) -> None:
    """Persist the planted structure alongside the generated corpus."""
    lines = [
        f"seed {truth.seed}",
        "boundaries " + " ".join(str(y) for y in truth.boundary_years),
    ]
    for e in truth.epochs:
        mix = " ".join(f"{m:.12g}" for m in np.asarray(e.mixture))
        if e.end_mixture is not None:
            mix += " to " + " ".join(f"{m:.12g}" for m in np.asarray(e.end_mixture))
        marker = "preview " if e.preview else ""
        lines.append(f"epoch {e.start} {e.end} {e.docs_per_year} {e.doc_length} {marker}{mix}")
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")
