from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from readloop.readability import (
    ADJUSTMENT,
    DIFFICULT_WORD_COEFF,
    SENTENCE_LENGTH_COEFF,
    FamiliarWordList,
    NoScorableContent,
    dale_chall_score,
    default_word_list,
    load_word_list,
    match_score,
)

TEN_FAMILIAR = FamiliarWordList(frozenset(
    "the cat sat on a mat and dog ran home".split()
))


def reference_score(n_difficult: int, n_words: int, n_sentences: int) -> float:
    """Independent recomputation straight from the published constants."""
    fraction = n_difficult / n_words
    value = 0.1579 * (100.0 * fraction) + 0.0496 * (n_words / n_sentences)
    if fraction > 0.05:
        value += 3.6365
    return value


class TestDaleChall:
    def test_all_familiar_ten_words(self):
        text = "The cat sat on a mat and the dog ran."
        score = dale_chall_score(text, TEN_FAMILIAR)
        assert score.difficult_word_fraction == 0.0
        assert score.avg_sentence_length == 10.0
        assert score.value == pytest.approx(0.496, abs=1e-12)
        assert score.value == pytest.approx(reference_score(0, 10, 1), abs=1e-12)

    def test_all_unfamiliar_ten_words(self):
        text = "Zygote quasar bezoar fjord kraken obelisk rhizome sphinx vortex yurt."
        score = dale_chall_score(text, TEN_FAMILIAR)
        assert score.difficult_word_fraction == 1.0
        expected = 0.1579 * 100 + 0.0496 * 10 + 3.6365
        assert score.value == pytest.approx(expected, abs=1e-12)
        assert score.value == pytest.approx(reference_score(10, 10, 1), abs=1e-12)

    def test_empty_text_errors(self):
        with pytest.raises(NoScorableContent):
            dale_chall_score("", TEN_FAMILIAR)

    def test_punctuation_only_errors(self):
        with pytest.raises(NoScorableContent):
            dale_chall_score("... !!! ???", TEN_FAMILIAR)

    def test_adjustment_threshold_boundary(self):
        # exactly 5% difficult: no adjustment (strict inequality)
        words = ["the"] * 19 + ["zygote"]
        text = " ".join(words) + "."
        score = dale_chall_score(text, TEN_FAMILIAR)
        assert score.difficult_word_fraction == pytest.approx(0.05)
        assert score.value == pytest.approx(0.1579 * 5 + 0.0496 * 20, abs=1e-12)

    def test_numbers_count_as_familiar(self):
        text = "The cat sat on 42 mats."
        score = dale_chall_score(text, TEN_FAMILIAR)
        assert score.difficult_word_fraction == pytest.approx(1 / 6)

    def test_case_and_whitespace_invariance(self):
        base = "The cat sat on a mat and the dog ran."
        shouted = "THE CAT   SAT on a MAT and\nthe dog ran."
        a = dale_chall_score(base, TEN_FAMILIAR)
        b = dale_chall_score(shouted, TEN_FAMILIAR)
        assert a.value == b.value

    def test_multi_sentence_average(self):
        text = "The cat sat. The dog ran home fast."
        score = dale_chall_score(text, TEN_FAMILIAR)
        assert score.avg_sentence_length == pytest.approx(4.0)
        # "fast" is not on the list; 8 words total
        assert score.difficult_word_fraction == pytest.approx(1 / 8)

    def test_appending_familiar_avg_length_sentence(self):
        # A new all-familiar sentence at the current average length keeps the
        # average and cannot raise the difficult fraction.
        text = "The cat sat on a mat and the dog ran."
        before = dale_chall_score(text, TEN_FAMILIAR)
        text2 = text + " The dog sat on a mat and the cat ran."
        after = dale_chall_score(text2, TEN_FAMILIAR)
        assert after.avg_sentence_length == before.avg_sentence_length
        assert after.difficult_word_fraction <= before.difficult_word_fraction


class TestWordList:
    def test_load_with_comments(self):
        wl = load_word_list("# header\ncat\nDog  # trailing\n\nmat\n")
        assert wl.words == frozenset({"cat", "dog", "mat"})

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            load_word_list("# nothing here\n")

    def test_default_list_loads(self):
        wl = default_word_list()
        assert "the" in wl
        assert len(wl.words) > 500


class TestMatchScore:
    def test_equal_gives_one(self):
        assert match_score(7.0, 7.0) == 1.0

    def test_gap_of_six_gives_zero(self):
        assert match_score(4.0, 10.0) == 0.0

    def test_clips_at_minus_one(self):
        assert match_score(1.0, 16.0) == -1.0

    @given(st.floats(-5, 25), st.floats(-5, 25))
    @settings(max_examples=200, deadline=None)
    def test_properties(self, a, d):
        v = match_score(a, d)
        assert -1.0 <= v <= 1.0
        assert v == match_score(d, a)
        expected = max(-1.0, min(1.0, 1.0 - abs(a - d) / 6.0))
        assert math.isclose(v, expected, abs_tol=1e-12)
        if abs(a - d) > 1e-9:  # float-visible gap
            assert v < 1.0

    @given(st.floats(0, 16), st.floats(0, 8), st.floats(0, 8))
    @settings(max_examples=100, deadline=None)
    def test_nonincreasing_in_gap(self, a, g1, g2):
        lo_gap, hi_gap = sorted((g1, g2))
        assert match_score(a, a + lo_gap) >= match_score(a, a + hi_gap)
