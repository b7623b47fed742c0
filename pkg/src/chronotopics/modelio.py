"""Versioned line-oriented model files.

A model file holds a CHRONO-LDA 1 section (hyperparameters, vocabulary
terms, phi rows), optionally followed by a CHRONO-SVM 1 section (class
years, then one bias + weights line per class), or an SVM section
alone.  Probabilities and weights are decimal text with 12 significant
digits; reading a file this module wrote and writing it again
reproduces it byte for byte.
"""

from __future__ import annotations

import numpy as np

from .topics import TopicModel
from .yearclf import YearClassifier

LDA_HEADER = "CHRONO-LDA 1"
SVM_HEADER = "CHRONO-SVM 1"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _lda_lines(model: TopicModel) -> list[str]:
    lines = [
        LDA_HEADER,
        f"k {model.k}",
        f"v {model.vocab_size}",
        f"alpha {model.alpha!r}",
        f"beta {model.beta!r}",
        f"seed {model.seed}",
    ]
    lines += [f"term {t}" for t in model.terms]
    lines += ["phi " + " ".join(_fmt(x) for x in row) for row in model.phi]
    return lines


def _svm_lines(clf: YearClassifier) -> list[str]:
    lines = [
        SVM_HEADER,
        "classes " + " ".join(str(y) for y in clf.classes),
    ]
    for bias, row in zip(clf.biases, clf.weights):
        lines.append("weights " + " ".join(_fmt(x) for x in [bias, *row]))
    return lines


def write_model(
    path: str, model: TopicModel | None = None, classifier: YearClassifier | None = None
) -> None:
    if model is None and classifier is None:
        raise ValueError("nothing to write: no model and no classifier")
    lines: list[str] = []
    if model is not None:
        lines += _lda_lines(model)
    if classifier is not None:
        lines += _svm_lines(classifier)
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")


class _Cursor:
    def __init__(self, lines: list[str], path: str):
        self.lines = lines
        self.pos = 0
        self.path = path

    def peek(self) -> str | None:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def take(self, key: str) -> list[str]:
        line = self.peek()
        if line is None or not line.startswith(key + " "):
            raise ValueError(f"{self.path}: line {self.pos + 1}: expected {key!r}")
        self.pos += 1
        return line.split()[1:]


def _read_lda(cur: _Cursor) -> TopicModel:
    cur.pos += 1  # header
    k = int(cur.take("k")[0])
    v = int(cur.take("v")[0])
    alpha = float(cur.take("alpha")[0])
    beta = float(cur.take("beta")[0])
    seed = int(cur.take("seed")[0])
    terms = tuple(cur.take("term")[0] for _ in range(v))
    phi = np.array([[float(x) for x in cur.take("phi")] for _ in range(k)])
    if phi.shape != (k, v):
        raise ValueError(f"{cur.path}: phi rows do not match k={k}, v={v}")
    return TopicModel(k=k, alpha=alpha, beta=beta, phi=phi, terms=terms, seed=seed)


def _read_svm(cur: _Cursor) -> YearClassifier:
    cur.pos += 1  # header
    classes = tuple(int(y) for y in cur.take("classes"))
    rows = [np.array([float(x) for x in cur.take("weights")]) for _ in classes]
    weights = np.stack([r[1:] for r in rows])
    biases = np.array([r[0] for r in rows])
    return YearClassifier(classes=classes, weights=weights, biases=biases)


def read_model(path: str) -> tuple[TopicModel | None, YearClassifier | None]:
    """Parse a model file into its (possibly absent) LDA and SVM parts."""
    with open(path, encoding="utf-8") as f:
        lines = [line.rstrip("\n") for line in f if line.strip()]
    cur = _Cursor(lines, path)
    model: TopicModel | None = None
    classifier: YearClassifier | None = None
    if cur.peek() == LDA_HEADER:
        model = _read_lda(cur)
    if cur.peek() == SVM_HEADER:
        classifier = _read_svm(cur)
    if model is None and classifier is None:
        raise ValueError(f"{path}: not a model file (missing {LDA_HEADER!r}/{SVM_HEADER!r} header)")
    if cur.peek() is not None:
        raise ValueError(f"{path}: line {cur.pos + 1}: trailing content")
    return model, classifier
