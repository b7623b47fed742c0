"""End-to-end command-line tests over tiny corpora."""

import io
import json

import numpy as np
import pytest

from chronotopics.cli import main
from chronotopics.modelio import read_model

FAST = ["--k-topics", "2", "--lda-iters", "60", "--svm-epochs", "25",
        "--min-df", "1", "--alpha", "1.0"]


@pytest.fixture
def corpus_path(tmp_path):
    """Two years on disjoint vocabularies, trivially separable."""
    rng = np.random.default_rng(0)
    words = {2000: ["alpha", "bravo", "charlie", "delta"],
             2003: ["xray", "yankee", "zulu", "whiskey"]}
    path = tmp_path / "corpus.jsonl"
    with open(path, "w") as f:
        for year, vocab in words.items():
            for i in range(6):
                text = " ".join(rng.choice(vocab, size=25))
                f.write(json.dumps({"id": f"y{year}d{i}", "year": year, "text": text}) + "\n")
    return str(path)


class TestIngest:
    def test_report(self, corpus_path, capsys):
        assert main(["ingest", corpus_path]) == 0
        out = capsys.readouterr().out
        assert "documents 12" in out
        assert "year_begin 2000" in out
        assert "year_end 2003" in out
        assert "present_years 2" in out
        assert "year 2000 6" in out
        assert "empty_after_tokenization 0" in out

    def test_malformed_line_exits_nonzero_with_line_number(self, tmp_path, capsys):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"id": "a", "year": 2000, "text": "x"}\n{broken\n')
        assert main(["ingest", str(path)]) == 1
        err = capsys.readouterr().err
        assert "line 2" in err
        assert err.count("\n") == 1

    def test_missing_file_exits_nonzero(self, tmp_path, capsys):
        assert main(["ingest", str(tmp_path / "nope.jsonl")]) == 1
        assert "error:" in capsys.readouterr().err


class TestTrain:
    def test_model_file_roundtrips(self, corpus_path, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["train", corpus_path, "--out", str(out), "--seed", "5", *FAST]) == 0
        model_path = out / "model.txt"
        assert model_path.exists()
        model, clf = read_model(str(model_path))
        assert model.k == 2
        assert clf.classes == (2000, 2003)

    def test_same_seed_byte_identical_models(self, corpus_path, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        main(["train", corpus_path, "--out", str(out1), "--seed", "5", *FAST])
        main(["train", corpus_path, "--out", str(out2), "--seed", "5", *FAST])
        assert (out1 / "model.txt").read_bytes() == (out2 / "model.txt").read_bytes()

    def test_missing_corpus_path(self, tmp_path, capsys):
        assert main(["train", str(tmp_path / "nope.jsonl"), "--out", str(tmp_path)]) == 1
        assert "error:" in capsys.readouterr().err


class TestEvaluate:
    def test_identity_oracle_gives_zero_mae(self, corpus_path, tmp_path, capsys):
        out = tmp_path / "out"
        code = main(["evaluate", corpus_path, "--identity-oracle", "--folds", "3",
                     "--out", str(out), *FAST])
        assert code == 0
        report = (out / "report.txt").read_text()
        assert "mean_mae 0\n" in report or "mean_mae 0" in report
        assert (out / "confusion.csv").exists()
        assert (out / "predictions.csv").exists()

    def test_real_evaluation_writes_artifacts(self, corpus_path, tmp_path, capsys):
        out = tmp_path / "out"
        code = main(["evaluate", corpus_path, "--folds", "3", "--out", str(out),
                     "--seed", "7", *FAST])
        assert code == 0
        stdout = capsys.readouterr().out
        assert "mean_mae" in stdout
        lines = (out / "confusion.csv").read_text().strip().splitlines()
        assert lines[0] == "year,2000,2003"


class TestScoreYears:
    def test_csv_columns_and_zero_scores_for_perfect_predictions(self, corpus_path, tmp_path):
        out = tmp_path / "out"
        assert main(["score-years", corpus_path, "--out", str(out), "--seed", "3", *FAST]) == 0
        csv_path = out / "year_scores_resubstitution.csv"
        lines = csv_path.read_text().strip().splitlines()
        assert lines[0] == ("year,score,err_future,err_past,n_papers,"
                            "n_future,n_past,norm_future,norm_past")
        # disjoint vocabularies make resubstitution exact: all scores 0
        for line in lines[1:]:
            assert line.split(",")[1] == "0"

    def test_svg_and_cv_labeling(self, corpus_path, tmp_path):
        out = tmp_path / "out"
        code = main(["score-years", corpus_path, "--cv", "--svg", "--folds", "3",
                     "--out", str(out), "--seed", "3", *FAST])
        assert code == 0
        assert (out / "year_scores_cv.csv").exists()
        svg = (out / "year_scores_cv.svg").read_text()
        assert svg.startswith("<svg")

    def test_determinism_byte_identical_csvs(self, corpus_path, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        args = ["score-years", corpus_path, "--seed", "11", *FAST]
        main([*args, "--out", str(out1)])
        main([*args, "--out", str(out2)])
        f = "year_scores_resubstitution.csv"
        assert (out1 / f).read_bytes() == (out2 / f).read_bytes()


class TestTrends:
    def test_csv_contract_and_simplex_sums(self, corpus_path, tmp_path):
        out = tmp_path / "out"
        assert main(["trends", corpus_path, "--svg", "--out", str(out),
                     "--seed", "2", *FAST]) == 0
        lines = (out / "trends.csv").read_text().strip().splitlines()
        assert lines[0] == "topic,year,mean_theta"
        sums = {}
        for line in lines[1:]:
            topic, year, val = line.split(",")
            sums[year] = sums.get(year, 0.0) + float(val)
        for total in sums.values():
            assert total == pytest.approx(1.0, abs=1e-9)
        assert (out / "trends.svg").read_text().startswith("<svg")


class TestSynth:
    def spec_file(self, tmp_path):
        path = tmp_path / "epochs.txt"
        path.write_text(
            "seed 13\n"
            "topics 2\n"
            "words-per-topic 6\n"
            "epoch 2000 2002 4 30 0.9 0.1\n"
            "epoch 2003 2005 4 30 0.1 0.9\n"
        )
        return str(path)

    def test_generates_corpus_and_truth(self, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["synth", self.spec_file(tmp_path), "--out", str(out)]) == 0
        stdout = capsys.readouterr().out
        assert "documents 24" in stdout
        truth = (out / "truth.txt").read_text()
        assert "seed 13" in truth
        assert "boundaries 2003" in truth
        # generated corpus is ingestible
        assert main(["ingest", str(out / "corpus.jsonl")]) == 0

    def test_explicit_seed_flag_overrides_file_seed(self, tmp_path):
        out1, out2, out3 = tmp_path / "a", tmp_path / "b", tmp_path / "c"
        spec = self.spec_file(tmp_path)
        main(["synth", spec, "--out", str(out1)])
        main(["synth", spec, "--out", str(out2), "--seed", "99"])
        main(["synth", spec, "--out", str(out3), "--seed", "13"])
        c1 = (out1 / "corpus.jsonl").read_bytes()
        c2 = (out2 / "corpus.jsonl").read_bytes()
        c3 = (out3 / "corpus.jsonl").read_bytes()
        assert c1 != c2
        assert c1 == c3


class TestPredict:
    def _train(self, corpus_path, tmp_path):
        out = tmp_path / "out"
        main(["train", corpus_path, "--out", str(out), "--seed", "5", *FAST])
        return str(out / "model.txt")

    def test_training_document_text_predicts_its_year(self, corpus_path, tmp_path,
                                                      capsys, monkeypatch):
        model = self._train(corpus_path, tmp_path)
        monkeypatch.setattr("sys.stdin", io.StringIO("xray yankee zulu whiskey xray zulu"))
        assert main(["predict", model, "--seed", "5", *FAST]) == 0
        out = capsys.readouterr().out
        assert "predicted_year 2003" in out
        assert "theta " in out
        assert "score 2000 " in out and "score 2003 " in out

    def test_empty_input_warns_and_predicts_a_class(self, corpus_path, tmp_path,
                                                    capsys, monkeypatch):
        model = self._train(corpus_path, tmp_path)
        monkeypatch.setattr("sys.stdin", io.StringIO(""))
        with pytest.warns(UserWarning, match="empty document"):
            code = main(["predict", model, "--seed", "5", *FAST])
        assert code == 0
        out = capsys.readouterr().out
        assert "predicted_year " in out
        year = int(out.split("predicted_year ")[1].split()[0])
        assert year in (2000, 2003)

    def test_deterministic_output(self, corpus_path, tmp_path, capsys, monkeypatch):
        model = self._train(corpus_path, tmp_path)
        capsys.readouterr()  # drop training output
        outputs = []
        for _ in range(2):
            monkeypatch.setattr("sys.stdin", io.StringIO("alpha bravo charlie"))
            main(["predict", model, "--seed", "5", *FAST])
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]

    def test_lda_only_model_rejected(self, corpus_path, tmp_path, capsys, monkeypatch):
        model_path = self._train(corpus_path, tmp_path)
        from chronotopics import modelio
        model, _ = read_model(model_path)
        lda_only = str(tmp_path / "lda_only.txt")
        modelio.write_model(lda_only, model=model)
        monkeypatch.setattr("sys.stdin", io.StringIO("text"))
        assert main(["predict", lda_only]) == 1
        assert "both LDA and SVM" in capsys.readouterr().err


class TestEvaluateEpochStructure:
    def test_confusion_mass_concentrates_in_epoch_blocks(self, tmp_path):
        """Cross-validating a 3-epoch corpus confines most confusion to
        within-epoch blocks; threshold: >= 0.7 of total mass."""
        import numpy as np
        from chronotopics.synthgen import EpochSpec, disjoint_topic_word, generate
        from chronotopics.corpus import write_jsonl

        def dom(i, k=3, w=0.85):
            m = np.full(k, (1.0 - w) / (k - 1))
            m[i] = w
            return m

        tw, terms = disjoint_topic_word(3, 10)
        epochs = [
            EpochSpec(2000 + 4 * j, 2003 + 4 * j, dom(j), docs_per_year=6, doc_length=60)
            for j in range(3)
        ]
        corpus, truth = generate(epochs, tw, terms, seed=2, doc_concentration=30.0)
        path = tmp_path / "epochs.jsonl"
        write_jsonl(corpus, str(path))
        out = tmp_path / "out"
        code = main(["evaluate", str(path), "--k-topics", "3", "--lda-iters", "150",
                     "--svm-epochs", "30", "--min-df", "1", "--alpha", "1.0",
                     "--folds", "3", "--seed", "1", "--out", str(out)])
        assert code == 0

        lines = (out / "confusion.csv").read_text().strip().splitlines()
        classes = [int(y) for y in lines[0].split(",")[1:]]
        counts = np.array([[int(c) for c in line.split(",")[1:]] for line in lines[1:]])

        def epoch_of(year):
            return next(i for i, e in enumerate(truth.epochs) if e.start <= year <= e.end)

        total = counts.sum()
        within = sum(
            counts[i, j]
            for i, ty in enumerate(classes)
            for j, py in enumerate(classes)
            if epoch_of(ty) == epoch_of(py)
        )
        assert within / total >= 0.7


class TestConfigFile:
    def test_precedence_flags_over_config_over_defaults(self, corpus_path, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("k-topics 4\nlda-iters 30\nmin-df 1\nalpha 1.0\nsvm-epochs 10\n")
        out1 = tmp_path / "a"
        main(["train", corpus_path, "--config", str(cfg), "--out", str(out1)])
        model1, _ = read_model(str(out1 / "model.txt"))
        assert model1.k == 4  # config beats default 20

        out2 = tmp_path / "b"
        main(["train", corpus_path, "--config", str(cfg), "--k-topics", "2",
              "--out", str(out2)])
        model2, _ = read_model(str(out2 / "model.txt"))
        assert model2.k == 2  # flag beats config

    def test_bad_config_entry_rejected(self, corpus_path, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("unknown-key 12\n")
        assert main(["train", corpus_path, "--config", str(cfg)]) == 1
        assert "bad config entry" in capsys.readouterr().err
