"""Corpus ingestion, tokenization, vocabulary and vectorization tests."""

import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from chronotopics.corpus import (
    BowVector,
    Corpus,
    Document,
    TokenizerOptions,
    build_vocabulary,
    ingest_jsonl,
    load_stopwords,
    tokenize,
    vectorize,
    write_jsonl,
)


def write_corpus_file(path, records):
    with open(path, "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r) + "\n")


class TestTokenize:
    def test_empty_input(self):
        assert tokenize("") == []

    def test_stopwords_and_lowercasing(self):
        opts = TokenizerOptions(min_len=3, stopwords=frozenset({"the"}))
        assert tokenize("The Semantic Web, the Web!", opts) == ["semantic", "web", "web"]

    def test_digits_and_hyphens_split_runs(self):
        opts = TokenizerOptions(min_len=3, stopwords=frozenset())
        assert tokenize("LDA2000 topic-model", opts) == ["lda", "topic", "model"]

    def test_min_len_filter(self):
        opts = TokenizerOptions(min_len=3, stopwords=frozenset())
        assert tokenize("an ox web", opts) == ["web"]

    def test_bundled_stopwords_contain_common_words(self):
        sw = load_stopwords()
        assert {"the", "and", "of"} <= sw

    @given(st.text(max_size=200))
    def test_idempotent_on_own_output(self, text):
        opts = TokenizerOptions()
        once = tokenize(text, opts)
        assert tokenize(" ".join(once), opts) == once


class TestDocumentAndCorpus:
    def test_year_sanity_bound(self):
        with pytest.raises(ValueError, match="sanity bound"):
            Document(id="a", year=999, text="x")

    def test_empty_id_rejected(self):
        with pytest.raises(ValueError, match="non-empty"):
            Document(id="", year=2000, text="x")

    def test_year_range_and_present_years(self):
        docs = [
            Document("a", 2000, "x"),
            Document("b", 2000, "y"),
            Document("c", 2005, "z"),
        ]
        corpus = Corpus(docs)
        assert corpus.year_begin == 2000
        assert corpus.year_end == 2005
        assert corpus.present_years == (2000, 2005)

    def test_duplicate_id_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            Corpus([Document("a", 2000, "x"), Document("a", 2001, "y")])

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError, match="at least one"):
            Corpus([])


class TestIngest:
    def test_basic_ingest(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        write_corpus_file(path, [
            {"id": "a", "year": 2000, "text": "web"},
            {"id": "b", "year": 2000, "text": "graph"},
            {"id": "c", "year": 2005, "text": "search"},
        ])
        corpus = ingest_jsonl(str(path))
        assert len(corpus) == 3
        assert corpus.year_begin == 2000
        assert corpus.year_end == 2005
        assert corpus.present_years == (2000, 2005)
        assert [d.id for d in corpus] == ["a", "b", "c"]

    def test_duplicate_id_names_both_lines(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        write_corpus_file(path, [
            {"id": "a", "year": 2000, "text": "x"},
            {"id": "b", "year": 2001, "text": "y"},
            {"id": "a", "year": 2002, "text": "z"},
        ])
        with pytest.raises(ValueError, match=r"'a'.*lines 1 and 3"):
            ingest_jsonl(str(path))

    def test_malformed_line_reports_line_number(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text('{"id": "a", "year": 2000, "text": "x"}\nnot json\n')
        with pytest.raises(ValueError, match="line 2"):
            ingest_jsonl(str(path))

    def test_missing_field_reports_line_number(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text('{"id": "a", "text": "no year"}\n')
        with pytest.raises(ValueError, match="line 1.*'year'"):
            ingest_jsonl(str(path))

    def test_year_out_of_bound_rejected(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        write_corpus_file(path, [{"id": "a", "year": 99, "text": "x"}])
        with pytest.raises(ValueError, match="line 1"):
            ingest_jsonl(str(path))

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text("")
        with pytest.raises(ValueError, match="empty corpus"):
            ingest_jsonl(str(path))

    def test_unknown_fields_ignored(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        write_corpus_file(path, [{"id": "a", "year": 2000, "text": "x", "extra": 1}])
        assert len(ingest_jsonl(str(path))) == 1

    def test_reproduction_scale_27_present_years(self, tmp_path):
        """3,105 documents over 1986-2016 minus four missing years."""
        years = [y for y in range(1986, 2017) if y not in (1989, 1994, 1996, 1997)]
        records = []
        for i in range(3105):
            records.append({"id": f"p{i:05d}", "year": years[i % len(years)], "text": "web"})
        path = tmp_path / "big.jsonl"
        write_corpus_file(path, records)
        corpus = ingest_jsonl(str(path))
        assert len(corpus) == 3105
        assert len(corpus.present_years) == 27
        assert corpus.year_begin == 1986
        assert corpus.year_end == 2016

    def test_roundtrip_identity(self, tmp_path):
        """ingest -> write -> ingest preserves ids, years and token streams."""
        src = tmp_path / "src.jsonl"
        write_corpus_file(src, [
            {"id": "a", "year": 2000, "text": "Web graphs & THINGS"},
            {"id": "b", "year": 2001, "text": "semantic   web"},
        ])
        corpus = ingest_jsonl(str(src))
        dst = tmp_path / "dst.jsonl"
        write_jsonl(corpus, str(dst))
        again = ingest_jsonl(str(dst))
        opts = TokenizerOptions()
        for d1, d2 in zip(corpus, again):
            assert (d1.id, d1.year) == (d2.id, d2.year)
            assert tokenize(d1.text, opts) == tokenize(d2.text, opts)


class TestVocabulary:
    opts = TokenizerOptions(min_len=3, stopwords=frozenset())

    def test_min_df_counts_documents(self):
        corpus = Corpus([
            Document("a", 2000, "web web web web web graph"),
            Document("b", 2001, "web"),
        ])
        vocab = build_vocabulary(corpus, min_df=2, opts=self.opts)
        assert "web" in vocab
        assert vocab.doc_freq["web"] == 2
        # "graph" occurs 1 document even though corpus has 1 occurrence
        assert "graph" not in vocab

    def test_occurrences_do_not_substitute_for_df(self):
        corpus = Corpus([Document("a", 2000, "rare rare rare rare rare")])
        with pytest.raises(ValueError, match="empty vocabulary"):
            build_vocabulary(corpus, min_df=2, opts=self.opts)

    def test_terms_sorted_lexicographically(self):
        corpus = Corpus([Document("a", 2000, "zebra apple mango")])
        vocab = build_vocabulary(corpus, min_df=1, opts=self.opts)
        assert list(vocab.terms) == sorted(vocab.terms)

    def test_order_independent_of_document_order(self):
        docs = [
            Document("a", 2000, "web graph search"),
            Document("b", 2001, "semantic web mining"),
            Document("c", 2002, "graph topology"),
        ]
        v1 = build_vocabulary(Corpus(docs), min_df=1, opts=self.opts)
        v2 = build_vocabulary(Corpus(docs[::-1]), min_df=1, opts=self.opts)
        assert v1.terms == v2.terms
        assert v1.doc_freq == v2.doc_freq


class TestVectorize:
    opts = TokenizerOptions(min_len=3, stopwords=frozenset())

    def _vocab(self, *texts):
        docs = [Document(str(i), 2000, t) for i, t in enumerate(texts)]
        return build_vocabulary(Corpus(docs), min_df=1, opts=self.opts)

    def test_direct_count(self):
        vocab = self._vocab("graph web")
        doc = Document("d", 2000, "web web graph")
        bow = vectorize(doc, vocab, self.opts)
        assert bow.term_ids.tolist() == [vocab.index["graph"], vocab.index["web"]]
        assert bow.counts.tolist() == [1, 2]

    def test_oov_dropped_silently(self):
        vocab = self._vocab("graph web")
        bow = vectorize(Document("d", 2000, "unknown tokens only"), vocab, self.opts)
        assert bow.is_empty()
        assert bow.total_count == 0

    def test_total_count_matches_naive_scan(self):
        """Oracle: summed counts equal a direct in-vocabulary token count."""
        rng = np.random.default_rng(7)
        words = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta"]
        vocab = self._vocab(" ".join(words[:4]))
        for _ in range(20):
            text = " ".join(rng.choice(words, size=rng.integers(0, 30)))
            doc = Document("d", 2000, text)
            bow = vectorize(doc, vocab, self.opts)
            naive = sum(1 for t in tokenize(text, self.opts) if t in vocab)
            assert bow.total_count == naive

    def test_total_bounded_by_token_count(self):
        vocab = self._vocab("graph web data")
        text = "web data and some unknown words"
        doc = Document("d", 2000, text)
        assert vectorize(doc, vocab, self.opts).total_count <= len(tokenize(text, self.opts))


class TestBowVector:
    def test_invariants_enforced(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            BowVector(term_ids=np.array([3, 1]), counts=np.array([1, 1]))
        with pytest.raises(ValueError, match=">= 1"):
            BowVector(term_ids=np.array([0, 1]), counts=np.array([1, 0]))
        with pytest.raises(ValueError, match="equal length"):
            BowVector(term_ids=np.array([0]), counts=np.array([1, 2]))
