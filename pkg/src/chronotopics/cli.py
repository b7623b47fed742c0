"""Command-line surface for the turnaround-year pipeline.

Commands: ingest, train, evaluate, score-years, trends, synth, predict.
Every randomized step hangs off the single --seed flag; two runs with
equal flags produce byte-identical artifacts.  Flag values override
config-file entries, which override built-in defaults; the config file
is `key value` text using the long flag names (e.g. `k-topics 6`).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import chronometrics, modelio, synthgen
from .charts import bar_chart, line_chart
from .chronometrics import PipelineSettings
from .corpus import Corpus, Document, TokenizerOptions, Vocabulary, ingest_jsonl, load_stopwords, tokenize, vectorize, write_jsonl
from .topics import infer_theta, topic_trends, write_trends_csv
from .yearclf import decision_scores, predict_year

DEFAULTS: dict[str, object] = {
    "k-topics": 20,
    "alpha": 2.5,
    "beta": 0.01,
    "lda-iters": 1000,
    "svm-c": 1.0,
    "svm-epochs": 100,
    "folds": 10,
    "min-df": 5,
    "min-len": 3,
    "seed": 42,
    "stopwords": None,
    "out": "out",
    "model": None,
}


@dataclass(frozen=True)
class RunConfig:
    """Merged settings for one command invocation."""

    k_topics: int
    alpha: float
    beta: float
    lda_iters: int
    svm_c: float
    svm_epochs: int
    folds: int
    min_df: int
    min_len: int
    seed: int
    seed_explicit: bool
    stopwords: str | None
    out: Path
    model: Path | None

    def tokenizer(self) -> TokenizerOptions:
        return TokenizerOptions(min_len=self.min_len, stopwords=load_stopwords(self.stopwords))

    def pipeline_settings(self) -> PipelineSettings:
        return PipelineSettings(
            k_topics=self.k_topics,
            alpha=self.alpha,
            beta=self.beta,
            lda_iterations=self.lda_iters,
            svm_c=self.svm_c,
            svm_epochs=self.svm_epochs,
            min_df=self.min_df,
            tokenizer=self.tokenizer(),
        )

    def model_path(self) -> Path:
        return self.model if self.model is not None else self.out / "model.txt"


def _parse_config_file(path: str) -> dict[str, object]:
    values: dict[str, object] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, value = line.partition(" ")
            value = value.strip()
            if key not in DEFAULTS or not value:
                raise ValueError(f"{path}: line {lineno}: bad config entry {line!r}")
            default = DEFAULTS[key]
            if isinstance(default, bool):
                values[key] = value.lower() in ("1", "true", "yes")
            elif isinstance(default, int):
                values[key] = int(value)
            elif isinstance(default, float):
                values[key] = float(value)
            else:
                values[key] = value
    return values


def _merge_config(args: argparse.Namespace) -> RunConfig:
    merged = dict(DEFAULTS)
    explicit: set[str] = set()
    if getattr(args, "config", None):
        from_file = _parse_config_file(args.config)
        merged.update(from_file)
        explicit.update(from_file)
    cli_values = {
        key: getattr(args, key.replace("-", "_"))
        for key in DEFAULTS
        if getattr(args, key.replace("-", "_"), None) is not None
    }
    merged.update(cli_values)
    explicit.update(cli_values)
    return RunConfig(
        k_topics=int(merged["k-topics"]),
        alpha=float(merged["alpha"]),
        beta=float(merged["beta"]),
        lda_iters=int(merged["lda-iters"]),
        svm_c=float(merged["svm-c"]),
        svm_epochs=int(merged["svm-epochs"]),
        folds=int(merged["folds"]),
        min_df=int(merged["min-df"]),
        min_len=int(merged["min-len"]),
        seed=int(merged["seed"]),
        seed_explicit="seed" in explicit,
        stopwords=merged["stopwords"],
        out=Path(str(merged["out"])),
        model=Path(str(merged["model"])) if merged["model"] else None,
    )


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key-value config file (flags override it)")
    parser.add_argument("--k-topics", type=int, help="number of topics (default 20)")
    parser.add_argument("--alpha", type=float, help="document-topic prior (default 2.5)")
    parser.add_argument("--beta", type=float, help="topic-word prior (default 0.01)")
    parser.add_argument("--lda-iters", type=int, help="Gibbs iterations (default 1000)")
    parser.add_argument("--svm-c", type=float, help="SVM regularization C (default 1.0)")
    parser.add_argument("--svm-epochs", type=int, help="SVM training epochs (default 100)")
    parser.add_argument("--folds", type=int, help="cross-validation folds (default 10)")
    parser.add_argument("--min-df", type=int, help="vocabulary document-frequency cutoff (default 5)")
    parser.add_argument("--min-len", type=int, help="minimum token length (default 3)")
    parser.add_argument("--seed", type=int, help="seed for all randomized behavior (default 42)")
    parser.add_argument("--stopwords", help="stopword file, one token per line (default: bundled)")
    parser.add_argument("--out", help="output directory (default: out)")
    parser.add_argument("--model", help="model file path (default: OUT/model.txt)")


def _outdir(cfg: RunConfig) -> Path:
    cfg.out.mkdir(parents=True, exist_ok=True)
    return cfg.out


def cmd_ingest(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    corpus = ingest_jsonl(args.corpus)
    opts = cfg.tokenizer()
    n_empty = sum(1 for d in corpus if not tokenize(d.text, opts))
    print(f"documents {len(corpus)}")
    print(f"year_begin {corpus.year_begin}")
    print(f"year_end {corpus.year_end}")
    print(f"present_years {len(corpus.present_years)}")
    for year, count in sorted(corpus.year_counts().items()):
        print(f"year {year} {count}")
    print(f"empty_after_tokenization {n_empty}")
    return 0


def cmd_train(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    corpus = ingest_jsonl(args.corpus)
    fitted = chronometrics.fit_pipeline(list(corpus.documents), cfg.pipeline_settings(), cfg.seed)
    _outdir(cfg)
    model_path = cfg.model_path()
    model_path.parent.mkdir(parents=True, exist_ok=True)
    modelio.write_model(str(model_path), model=fitted.model, classifier=fitted.classifier)
    print(f"model {model_path}")
    print(f"vocabulary {len(fitted.vocab)}")
    print(f"empty_after_vectorization {fitted.n_empty}")
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    corpus = ingest_jsonl(args.corpus)
    report = chronometrics.cross_validate(
        corpus, cfg.pipeline_settings(), cfg.folds, cfg.seed,
        identity_oracle=args.identity_oracle,
    )
    out = _outdir(cfg)
    confusion_csv = out / "confusion.csv"
    predictions_csv = out / "predictions.csv"
    report_path = out / "report.txt"
    chronometrics.write_confusion_csv(report.confusion, str(confusion_csv))
    chronometrics.write_predictions_csv(list(report.records), str(predictions_csv))
    # CSV paths recorded relative to the report so runs compare byte-for-byte
    chronometrics.write_report(
        report, str(report_path),
        {"confusion": confusion_csv.name, "predictions": predictions_csv.name},
    )
    print(f"report {report_path}")
    print(f"mean_mae {report.mean_mae:.12g}")
    return 0


def _records_for_scoring(corpus: Corpus, cfg: RunConfig, cross_validated: bool):
    if cross_validated:
        report = chronometrics.cross_validate(corpus, cfg.pipeline_settings(), cfg.folds, cfg.seed)
        return list(report.records), "cv"
    records, _ = chronometrics.resubstitution_records(corpus, cfg.pipeline_settings(), cfg.seed)
    return records, "resubstitution"


def cmd_score_years(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    corpus = ingest_jsonl(args.corpus)
    records, label = _records_for_scoring(corpus, cfg, args.cv)
    scores = chronometrics.rank_years(records, corpus)
    out = _outdir(cfg)
    csv_path = out / f"year_scores_{label}.csv"
    chronometrics.write_year_scores_csv(scores, str(csv_path))
    print(f"year_scores {csv_path}")
    if args.svg:
        svg_path = out / f"year_scores_{label}.svg"
        by_year = sorted((s.year, s.score) for s in scores)
        svg_path.write_text(
            bar_chart(by_year, f"Year scores ({label})"), encoding="utf-8"
        )
        print(f"chart {svg_path}")
    for s in scores[:5]:
        print(f"top {s.year} {s.score:.12g}")
    return 0


def cmd_trends(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    corpus = ingest_jsonl(args.corpus)
    fitted = chronometrics.fit_pipeline(list(corpus.documents), cfg.pipeline_settings(), cfg.seed)
    trends = topic_trends(list(fitted.thetas), corpus)
    out = _outdir(cfg)
    csv_path = out / "trends.csv"
    write_trends_csv(trends, str(csv_path))
    print(f"trends {csv_path}")
    if args.svg:
        svg_path = out / "trends.svg"
        series = [
            (f"topic {t.topic}", sorted(t.mean_theta.items()))
            for t in trends
        ]
        svg_path.write_text(line_chart(series, "Topic trends"), encoding="utf-8")
        print(f"chart {svg_path}")
    return 0


def cmd_synth(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    spec = synthgen.parse_epoch_spec(args.spec)
    seed = cfg.seed if cfg.seed_explicit else spec.seed
    corpus, truth = synthgen.generate(
        list(spec.epochs), spec.topic_word, list(spec.terms), seed,
        spec.blend_width, spec.doc_concentration,
    )
    out = _outdir(cfg)
    corpus_path = out / "corpus.jsonl"
    truth_path = out / "truth.txt"
    write_jsonl(corpus, str(corpus_path))
    synthgen.write_truth(truth, str(truth_path))
    print(f"corpus {corpus_path}")
    print(f"truth {truth_path}")
    print(f"documents {len(corpus)}")
    return 0


def cmd_predict(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    model, classifier = modelio.read_model(args.model_file)
    if model is None or classifier is None:
        raise ValueError(f"{args.model_file}: prediction needs both LDA and SVM sections")
    text = sys.stdin.read()
    opts = cfg.tokenizer()
    vocab = Vocabulary(list(model.terms), {})
    bow = vectorize(Document(id="stdin", year=2000, text=text), vocab, opts)
    theta = infer_theta(model, bow, iterations=cfg.lda_iters, seed=cfg.seed)
    year = predict_year(classifier, theta)
    scores = decision_scores(classifier, theta)
    print(f"predicted_year {year}")
    print("theta " + " ".join(f"{x:.12g}" for x in theta.theta))
    for cls, score in zip(classifier.classes, scores):
        print(f"score {cls} {score:.12g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chronotopics",
        description="Detect turnaround years in a timestamped document corpus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate a corpus and print its statistics")
    p.add_argument("corpus", help="JSON-Lines corpus file")
    _add_common(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("train", help="train LDA + SVM and write the model file")
    p.add_argument("corpus")
    _add_common(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="k-fold cross-validation report")
    p.add_argument("corpus")
    p.add_argument("--identity-oracle", action="store_true",
                   help="test flag: replace the predictor with yhat := y")
    _add_common(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("score-years", help="rank years by innovation score")
    p.add_argument("corpus")
    p.add_argument("--cv", action="store_true",
                   help="score cross-validated predictions instead of resubstitution")
    p.add_argument("--svg", action="store_true", help="also write an SVG bar chart")
    _add_common(p)
    p.set_defaults(func=cmd_score_years)

    p = sub.add_parser("trends", help="per-topic popularity by year")
    p.add_argument("corpus")
    p.add_argument("--svg", action="store_true", help="also write an SVG line chart")
    _add_common(p)
    p.set_defaults(func=cmd_trends)

    p = sub.add_parser("synth", help="generate a synthetic corpus from an epoch spec")
    p.add_argument("spec", help="epoch specification file")
    _add_common(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("predict", help="predict the year of text read from stdin")
    p.add_argument("model_file", help="model file with LDA and SVM sections")
    _add_common(p)
    p.set_defaults(func=cmd_predict)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
