"""Turnaround-year scoring and prediction-quality metrics.

The innovation score of year y combines the asymmetry of its papers'
prediction errors:

    S(y) = (Err_F / |P_y|) * N_F(y) - (Err_P / |P_y|) * N_P(y)

where Err_F sums (yhat - y) over papers predicted after y, Err_P sums
(y - yhat) over papers predicted before y, and the positional factors
N_F(y) = 1/(Y_e - y), N_P(y) = 1/(y - Y_b) rescale each mean error by
the largest value it could attain given y's position in [Y_b, Y_e].
At y = Y_e (resp. y = Y_b) the future (resp. past) term is zero by
definition; its error set is necessarily empty anyway whenever
predictions stay inside the year range.  Years with no papers get no
score.  High-S(y) years are the turnaround candidates.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field

import numpy as np

from .corpus import Corpus, Document, TokenizerOptions, Vocabulary, build_vocabulary, vectorize
from .topics import TopicDistribution, TopicModel, infer_theta, train_lda
from .yearclf import PredictionRecord, YearClassifier, predict_year, train_svm


@dataclass(frozen=True)
class YearScore:
    """S(y) with every component of its computation, for external recomputation."""

    year: int
    score: float
    err_future: int
    err_past: int
    n_papers: int
    n_future: int
    n_past: int
    norm_future: float
    norm_past: float


@dataclass(frozen=True)
class ConfusionMatrix:
    """counts[i][j] = records with true year classes[i] predicted as classes[j]."""

    classes: tuple[int, ...]
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class EvaluationReport:
    fold_maes: tuple[float, ...]
    mean_mae: float
    confusion: ConfusionMatrix
    records: tuple[PredictionRecord, ...]


@dataclass(frozen=True)
class PipelineSettings:
    """Everything the LDA + SVM pipeline needs besides the corpus and seed."""

    k_topics: int = 20
    alpha: float | None = None  # None = 50/K
    beta: float = 0.01
    lda_iterations: int = 1000
    svm_c: float = 1.0
    svm_epochs: int = 100
    min_df: int = 5
    tokenizer: TokenizerOptions = field(default_factory=TokenizerOptions)


@dataclass(frozen=True)
class FittedPipeline:
    """A trained vocabulary + topic model + classifier over one document set."""

    vocab: Vocabulary
    model: TopicModel
    thetas: tuple[TopicDistribution, ...]
    classifier: YearClassifier
    n_empty: int


def error(record: PredictionRecord) -> int:
    """Signed prediction error, predicted minus true year."""
    return record.predicted_year - record.true_year


def mean_absolute_error(records: list[PredictionRecord]) -> float:
    if not records:
        raise ValueError("cannot compute MAE of an empty record list")
    return sum(abs(error(r)) for r in records) / len(records)


def confusion_matrix(records: list[PredictionRecord], classes: list[int]) -> ConfusionMatrix:
    class_of = {y: i for i, y in enumerate(classes)}
    counts = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for r in records:
        if r.true_year not in class_of:
            raise ValueError(f"record {r.doc_id!r}: true year {r.true_year} not in classes")
        if r.predicted_year not in class_of:
            raise ValueError(f"record {r.doc_id!r}: predicted year {r.predicted_year} not in classes")
        counts[class_of[r.true_year], class_of[r.predicted_year]] += 1
    return ConfusionMatrix(classes=tuple(classes), counts=counts)


def innovation_score(
    records_for_year: list[PredictionRecord], y: int, y_begin: int, y_end: int
) -> YearScore:
    """Score one year from the predictions of its own papers."""
    if not records_for_year:
        raise ValueError(f"year {y} has no prediction records; it gets no score")
    if not y_begin <= y <= y_end:
        raise ValueError(f"year {y} outside [{y_begin}, {y_end}]")
    if any(r.true_year != y for r in records_for_year):
        raise ValueError(f"all records must have true year {y}")

    future = [r for r in records_for_year if r.predicted_year > y]
    past = [r for r in records_for_year if r.predicted_year < y]
    err_future = sum(r.predicted_year - y for r in future)
    err_past = sum(y - r.predicted_year for r in past)
    n_papers = len(records_for_year)
    norm_future = 1.0 / (y_end - y) if y < y_end else 0.0
    norm_past = 1.0 / (y - y_begin) if y > y_begin else 0.0
    score = (err_future / n_papers) * norm_future - (err_past / n_papers) * norm_past
    return YearScore(
        year=y,
        score=score,
        err_future=err_future,
        err_past=err_past,
        n_papers=n_papers,
        n_future=len(future),
        n_past=len(past),
        norm_future=norm_future,
        norm_past=norm_past,
    )


def rank_years(all_records: list[PredictionRecord], corpus: Corpus) -> list[YearScore]:
    """One score per present year with records, sorted by S(y) descending.

    Ties break toward the earlier year.  Years without records (no
    papers, or none evaluated) are omitted.
    """
    by_year: dict[int, list[PredictionRecord]] = {}
    for r in all_records:
        by_year.setdefault(r.true_year, []).append(r)
    scores = [
        innovation_score(by_year[y], y, corpus.year_begin, corpus.year_end)
        for y in corpus.present_years
        if y in by_year
    ]
    return sorted(scores, key=lambda s: (-s.score, s.year))


def stratified_folds(labels: list[int], k: int, seed: int) -> list[np.ndarray]:
    """Partition indices into k folds, stratified by label.

    Each label's indices are shuffled by the seeded generator (PCG64),
    then dealt round-robin onto folds through a cursor shared across
    labels, so per-label fold counts differ by at most one and total
    fold sizes do too (k = n gives leave-one-out).
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if k > len(labels):
        raise ValueError(f"k={k} exceeds the number of documents ({len(labels)})")
    rng = np.random.Generator(np.random.PCG64(seed))
    by_label: dict[int, list[int]] = {}
    for i, y in enumerate(labels):
        by_label.setdefault(y, []).append(i)
    folds: list[list[int]] = [[] for _ in range(k)]
    cursor = 0
    for y in sorted(by_label):
        for i in rng.permutation(by_label[y]):
            folds[cursor % k].append(int(i))
            cursor += 1
    return [np.array(sorted(f), dtype=np.int64) for f in folds]


def fit_pipeline(documents: list[Document], settings: PipelineSettings, seed: int) -> FittedPipeline:
    """Vocabulary -> LDA -> SVM on one document set.

    Documents that vectorize to nothing keep their (uniform) theta but
    are excluded from classifier training; their count is reported.
    """
    sub = Corpus(list(documents))
    vocab = build_vocabulary(sub, settings.min_df, settings.tokenizer)
    bows = [vectorize(d, vocab, settings.tokenizer) for d in documents]
    model, thetas = train_lda(
        bows,
        settings.k_topics,
        vocab,
        alpha=settings.alpha,
        beta=settings.beta,
        iterations=settings.lda_iterations,
        seed=seed,
    )
    trainable = [i for i, b in enumerate(bows) if not b.is_empty()]
    classifier = train_svm(
        [thetas[i] for i in trainable],
        [documents[i].year for i in trainable],
        c=settings.svm_c,
        epochs=settings.svm_epochs,
        seed=seed,
    )
    return FittedPipeline(
        vocab=vocab,
        model=model,
        thetas=tuple(thetas),
        classifier=classifier,
        n_empty=len(documents) - len(trainable),
    )


def resubstitution_records(
    corpus: Corpus, settings: PipelineSettings, seed: int
) -> tuple[list[PredictionRecord], FittedPipeline]:
    """Train on the whole corpus and predict its own documents (training thetas)."""
    fitted = fit_pipeline(list(corpus.documents), settings, seed)
    records = [
        PredictionRecord(doc.id, doc.year, predict_year(fitted.classifier, fitted.thetas[i]))
        for i, doc in enumerate(corpus.documents)
    ]
    return records, fitted


def cross_validate(
    corpus: Corpus,
    settings: PipelineSettings,
    k: int,
    seed: int,
    identity_oracle: bool = False,
) -> EvaluationReport:
    """Stratified k-fold evaluation of the full pipeline.

    Fold f trains vocabulary, LDA and SVM on its training split with
    derived seed = seed + f and predicts the held-out documents from
    fold-in thetas, so the result is deterministic whatever the fold
    execution order.  `identity_oracle` replaces the predictor with
    yhat := y, a plumbing check for the metrics path.
    """
    folds = stratified_folds([d.year for d in corpus.documents], k, seed)
    all_records: list[PredictionRecord] = []
    fold_maes: list[float] = []
    for f, test_idx in enumerate(folds):
        fold_seed = seed + f
        records: list[PredictionRecord] = []
        if identity_oracle:
            records = [
                PredictionRecord(corpus.documents[i].id, corpus.documents[i].year,
                                 corpus.documents[i].year)
                for i in test_idx
            ]
        else:
            test_set = set(int(i) for i in test_idx)
            train_docs = [d for i, d in enumerate(corpus.documents) if i not in test_set]
            fitted = fit_pipeline(train_docs, settings, fold_seed)
            for i in test_idx:
                doc = corpus.documents[i]
                bow = vectorize(doc, fitted.vocab, settings.tokenizer)
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")  # empty held-out docs fall back to uniform
                    theta = infer_theta(
                        fitted.model, bow, iterations=settings.lda_iterations, seed=fold_seed
                    )
                records.append(
                    PredictionRecord(doc.id, doc.year, predict_year(fitted.classifier, theta))
                )
        fold_maes.append(mean_absolute_error(records))
        all_records.extend(records)

    confusion = confusion_matrix(all_records, list(corpus.present_years))
    return EvaluationReport(
        fold_maes=tuple(fold_maes),
        mean_mae=sum(fold_maes) / len(fold_maes),
        confusion=confusion,
        records=tuple(all_records),
    )


def write_year_scores_csv(scores: list[YearScore], path: str) -> None:
    """Year-score export, sorted by score descending (rank_years order)."""
    ordered = sorted(scores, key=lambda s: (-s.score, s.year))
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow([
            "year", "score", "err_future", "err_past", "n_papers",
            "n_future", "n_past", "norm_future", "norm_past",
        ])
        for s in ordered:
            writer.writerow([
                s.year, f"{s.score:.12g}", s.err_future, s.err_past, s.n_papers,
                s.n_future, s.n_past, f"{s.norm_future:.12g}", f"{s.norm_past:.12g}",
            ])


def write_confusion_csv(cm: ConfusionMatrix, path: str) -> None:
    """Confusion export: first row/column carry the class years."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["year"] + [str(y) for y in cm.classes])
        for i, y in enumerate(cm.classes):
            writer.writerow([y] + [int(c) for c in cm.counts[i]])


def write_predictions_csv(records: list[PredictionRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["doc_id", "true_year", "predicted_year"])
        for r in records:
            writer.writerow([r.doc_id, r.true_year, r.predicted_year])


def write_report(report: EvaluationReport, path: str, csv_paths: dict[str, str]) -> None:
    """Structured text report: per-fold MAE, mean MAE, referenced CSV paths."""
    lines = [f"folds {len(report.fold_maes)}"]
    lines += [f"fold_mae {i} {mae:.12g}" for i, mae in enumerate(report.fold_maes)]
    lines.append(f"mean_mae {report.mean_mae:.12g}")
    lines += [f"{name}_csv {p}" for name, p in csv_paths.items()]
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")
