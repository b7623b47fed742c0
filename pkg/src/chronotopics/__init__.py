"""Turnaround-year detection for timestamped document corpora.

Pipeline: bag-of-words corpus -> LDA topic distributions -> year
prediction -> per-year innovation score from the asymmetry of
prediction errors toward the future versus the past.
"""

from .chronometrics import (
    ConfusionMatrix,
    EvaluationReport,
    PipelineSettings,
    YearScore,
    confusion_matrix,
    cross_validate,
    error,
    innovation_score,
    mean_absolute_error,
    rank_years,
)
from .corpus import (
    BowVector,
    Corpus,
    Document,
    TokenizerOptions,
    Vocabulary,
    build_vocabulary,
    ingest_jsonl,
    load_stopwords,
    tokenize,
    vectorize,
    write_jsonl,
)
from .synthgen import EpochSpec, SyntheticTruth, disjoint_topic_word, generate
from .topics import (
    TopicDistribution,
    TopicModel,
    TrendSeries,
    infer_theta,
    top_words,
    topic_trends,
    train_lda,
)
from .yearclf import (
    PredictionRecord,
    YearClassifier,
    decision_scores,
    predict_year,
    train_svm,
)

__version__ = "0.1.0"

__all__ = [
    "BowVector",
    "ConfusionMatrix",
    "Corpus",
    "Document",
    "EpochSpec",
    "EvaluationReport",
    "PipelineSettings",
    "PredictionRecord",
    "SyntheticTruth",
    "TokenizerOptions",
    "TopicDistribution",
    "TopicModel",
    "TrendSeries",
    "Vocabulary",
    "YearClassifier",
    "YearScore",
    "build_vocabulary",
    "confusion_matrix",
    "cross_validate",
    "decision_scores",
    "disjoint_topic_word",
    "error",
    "generate",
    "infer_theta",
    "ingest_jsonl",
    "innovation_score",
    "load_stopwords",
    "mean_absolute_error",
    "predict_year",
    "rank_years",
    "tokenize",
    "top_words",
    "topic_trends",
    "train_lda",
    "train_svm",
    "vectorize",
    "write_jsonl",
]
