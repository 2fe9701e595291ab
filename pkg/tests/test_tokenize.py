import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khabar.tokenize import (
    default_stopwords,
    load_stopwords,
    remove_stopwords,
    tokenize,
)

SAMPLE = "کچھ ممالک ایسے بھی ہیں جہاں اس برس روزے کا دورانیہ گھٹنے تک ہے"


def test_sample_sentence_has_14_tokens():
    assert len(tokenize(SAMPLE)) == 14


def test_empty_text():
    assert len(tokenize("")) == 0


def test_whitespace_split():
    assert tokenize("a b c").tokens == ["a", "b", "c"]


def test_join_reproduces_normalized_input():
    tokens = tokenize(SAMPLE)
    assert " ".join(tokens) == SAMPLE


def test_source_article_id_carried():
    assert tokenize("الف ب", source_article_id=7).source_article_id == 7


class TestStopwords:
    def test_load_deduplicates(self, tmp_path):
        path = tmp_path / "sw.txt"
        path.write_text("کا\nکی\nکا\n", encoding="utf-8")
        assert load_stopwords(path) == frozenset({"کا", "کی"})

    def test_load_empty_file(self, tmp_path):
        path = tmp_path / "sw.txt"
        path.write_text("", encoding="utf-8")
        assert load_stopwords(path) == frozenset()

    def test_load_skips_comments_and_blanks(self, tmp_path):
        path = tmp_path / "sw.txt"
        path.write_text("# comment\n\n  ہے  \n", encoding="utf-8")
        assert load_stopwords(path) == frozenset({"ہے"})

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_stopwords(tmp_path / "nope.txt")

    def test_bundled_list_size_matches_file(self):
        # oracle: count distinct non-comment lines in the shipped list
        from importlib import resources

        raw = (
            resources.files("khabar.data")
            .joinpath("urdu_stopwords.txt")
            .read_text(encoding="utf-8")
        )
        distinct = {
            line.strip()
            for line in raw.splitlines()
            if line.strip() and not line.startswith("#")
        }
        words = default_stopwords()
        assert len(words) == len(distinct) == 78
        assert all(w == w.strip() and w for w in words)

    def test_bundled_list_overlaps_sample_in_exactly_three(self):
        overlap = [t for t in tokenize(SAMPLE) if t in default_stopwords()]
        assert overlap == ["ہیں", "تک", "ہے"]

    def test_sample_filters_to_11(self):
        filtered = remove_stopwords(tokenize(SAMPLE), default_stopwords())
        assert len(filtered) == 11

    def test_empty_stopword_set_is_identity(self):
        tokens = tokenize(SAMPLE)
        assert remove_stopwords(tokens, frozenset()).tokens == tokens.tokens

    def test_all_stopwords_removed(self):
        tokens = tokenize("ہے ہیں تک")
        assert remove_stopwords(tokens, default_stopwords()).tokens == []


def _is_subsequence(shorter: list[str], longer: list[str]) -> bool:
    it = iter(longer)
    return all(token in it for token in shorter)


token_lists = st.lists(
    st.text(alphabet="ابپتکگہے", min_size=1, max_size=4), min_size=0, max_size=20
)
stopword_sets = st.frozensets(st.text(alphabet="ابپتکگہے", min_size=1, max_size=4), max_size=8)


class TestProperties:
    @given(token_lists, stopword_sets)
    @settings(max_examples=200, deadline=None)
    def test_output_is_subsequence(self, tokens, stopwords):
        filtered = remove_stopwords(tokenize(" ".join(tokens)), stopwords)
        assert _is_subsequence(filtered.tokens, tokens)

    @given(token_lists, stopword_sets)
    @settings(max_examples=200, deadline=None)
    def test_no_output_token_is_stopword(self, tokens, stopwords):
        filtered = remove_stopwords(tokenize(" ".join(tokens)), stopwords)
        assert not set(filtered.tokens) & stopwords

    @given(token_lists, stopword_sets)
    @settings(max_examples=200, deadline=None)
    def test_idempotent_for_fixed_set(self, tokens, stopwords):
        once = remove_stopwords(tokenize(" ".join(tokens)), stopwords)
        twice = remove_stopwords(once, stopwords)
        assert twice.tokens == once.tokens

    @given(token_lists, stopword_sets)
    @settings(max_examples=200, deadline=None)
    def test_never_grows(self, tokens, stopwords):
        filtered = remove_stopwords(tokenize(" ".join(tokens)), stopwords)
        assert len(filtered) <= len(tokens)
