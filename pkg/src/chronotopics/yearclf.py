"""Publication-year prediction: one-vs-rest linear SVMs over topic features.

Each year class gets a binary L2-regularized hinge-loss machine trained
by Pegasos-style subgradient descent: step size 1/(lambda*t) with
lambda = 1/(C*n), one shared seeded shuffle of the example order per
epoch.  The bias rides along as an augmented constant feature so it
shares the weight decay (a free-floating bias cannot recover from the
large early 1/(lambda*t) steps); the regularized norm therefore
includes the bias term.  For every class the returned machine is the
epoch-end iterate with the lowest regularized objective, the zero
start included as a candidate, so the final objective never exceeds
the objective at initialization.  Deterministic for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .topics import TopicDistribution


@dataclass(frozen=True)
class PredictionRecord:
    """One prediction: document id, actual year, predicted year."""

    doc_id: str
    true_year: int
    predicted_year: int


@dataclass(frozen=True)
class YearClassifier:
    """Per-class linear scorers over K-dimensional topic features.

    `classes` is strictly ascending; row i of `weights` and entry i of
    `biases` belong to classes[i].  Immutable; concurrent prediction is safe.
    """

    classes: tuple[int, ...]
    weights: np.ndarray
    biases: np.ndarray
    c: float | None = None
    epochs: int | None = None
    seed: int | None = None

    @property
    def n_features(self) -> int:
        return self.weights.shape[1]


def _objective(w: np.ndarray, x: np.ndarray, ysign: np.ndarray, lam: float) -> np.ndarray:
    """Per-class regularized hinge objective over augmented weights."""
    margins = ysign * (x @ w.T)
    hinge = np.maximum(0.0, 1.0 - margins).mean(axis=0)
    return 0.5 * lam * (w * w).sum(axis=1) + hinge


def train_svm(
    features: list[TopicDistribution],
    labels: list[int],
    *,
    c: float = 1.0,
    epochs: int = 100,
    seed: int,
) -> YearClassifier:
    """Fit one-vs-rest hinge-loss machines on topic-distribution features."""
    if len(features) != len(labels):
        raise ValueError("features and labels must have equal length")
    if len(features) < 2:
        raise ValueError("need at least 2 training examples")
    if c <= 0:
        raise ValueError("C must be positive")
    if epochs < 1:
        raise ValueError("epochs must be >= 1")
    classes = tuple(sorted(set(labels)))
    if len(classes) < 2:
        raise ValueError("need at least 2 distinct labels")

    # last column is the constant bias feature
    x = np.hstack([np.stack([f.theta for f in features]), np.ones((len(features), 1))])
    n, dim = x.shape
    m = len(classes)
    class_of = {y: i for i, y in enumerate(classes)}
    # ysign[i, c] = +1 where example i belongs to class c, else -1
    ysign = np.full((n, m), -1.0)
    ysign[np.arange(n), [class_of[y] for y in labels]] = 1.0

    lam = 1.0 / (c * n)
    w = np.zeros((m, dim))
    best_obj = _objective(w, x, ysign, lam)
    best_w = w.copy()

    rng = np.random.Generator(np.random.PCG64(seed))
    t = 0
    for _ in range(epochs):
        order = rng.permutation(n)
        for i in order:
            t += 1
            eta = 1.0 / (lam * t)
            violated = ysign[i] * (w @ x[i]) < 1.0
            w *= 1.0 - eta * lam
            if violated.any():
                w[violated] += eta * ysign[i, violated, None] * x[i]
        obj = _objective(w, x, ysign, lam)
        better = obj < best_obj
        if better.any():
            best_obj[better] = obj[better]
            best_w[better] = w[better]

    return YearClassifier(
        classes=classes, weights=best_w[:, :-1], biases=best_w[:, -1].copy(),
        c=float(c), epochs=int(epochs), seed=int(seed),
    )


def decision_scores(clf: YearClassifier, theta: TopicDistribution) -> np.ndarray:
    """score[c] = weights[c] . theta + biases[c], aligned with clf.classes."""
    if len(theta) != clf.n_features:
        raise ValueError(
            f"feature dimension mismatch: theta has {len(theta)}, "
            f"classifier expects {clf.n_features}"
        )
    return clf.weights @ theta.theta + clf.biases


def predict_year(clf: YearClassifier, theta: TopicDistribution) -> int:
    """Argmax-score class; ties break toward the earliest year."""
    scores = decision_scores(clf, theta)
    return clf.classes[int(np.argmax(scores))]
