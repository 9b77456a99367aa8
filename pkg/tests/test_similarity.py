from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knowsearch.similarity import (
    _lcsubstr_len,
    max_possible_similarity,
    phrase_similarity,
    word_similarity,
)


class TestWordSimilarity:
    def test_identity(self):
        assert word_similarity("mask", "mask") == 1.0

    def test_disjoint(self):
        assert word_similarity("abc", "xyz") == 0.0

    def test_lithography_pair(self):
        # longest common substring "lithograph" has length 10
        expected = 10 * 10 / (11 * 12)
        assert word_similarity("lithography", "lithographic") == pytest.approx(expected, abs=0)

    def test_lcsubstr(self):
        assert _lcsubstr_len("lithography", "lithographic") == 10
        assert _lcsubstr_len("abc", "xbcy") == 2
        assert _lcsubstr_len("", "abc") == 0


class TestPhraseSimilarity:
    def test_identity_exact(self):
        assert phrase_similarity("optical mask", "optical mask") == 1.0

    def test_swapped_words_pay_order_penalty(self):
        # coverage is perfect, one inversion halves the score
        assert phrase_similarity("mask layer", "layer mask") == 0.5

    def test_disjoint_single_words(self):
        assert phrase_similarity("aaa", "bbb") == 0.0

    def test_subphrase(self):
        # one shared word out of (1, 2): delta=1, base=3/4, no inversions
        assert phrase_similarity("mask", "optical mask") == 0.75

    def test_symmetry_fuzz(self):
        rng = random.Random(11)
        alphabet = "abcdefgh"
        for _ in range(2000):
            p1 = " ".join(
                "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 6)))
                for _ in range(rng.randint(1, 4))
            )
            p2 = " ".join(
                "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 6)))
                for _ in range(rng.randint(1, 4))
            )
            s12 = phrase_similarity(p1, p2)
            s21 = phrase_similarity(p2, p1)
            assert s12 == s21
            assert 0.0 <= s12 <= 1.0
            assert phrase_similarity(p1, p1) == 1.0

    @given(
        st.lists(
            st.text(alphabet="abcdefghij", min_size=1, max_size=8), min_size=1, max_size=4
        ),
        st.lists(
            st.text(alphabet="abcdefghij", min_size=1, max_size=8), min_size=1, max_size=4
        ),
    )
    @settings(max_examples=200, deadline=None)
    def test_properties_hypothesis(self, words1, words2):
        p1 = " ".join(words1)
        p2 = " ".join(words2)
        s = phrase_similarity(p1, p2)
        assert 0.0 <= s <= 1.0
        assert s == phrase_similarity(p2, p1)

    def test_bound_is_sound(self):
        rng = random.Random(3)
        for _ in range(500):
            p1 = " ".join("abcd"[: rng.randint(1, 4)] for _ in range(rng.randint(1, 4)))
            p2 = " ".join("abcd"[: rng.randint(1, 4)] for _ in range(rng.randint(1, 4)))
            m, n = len(p1.split()), len(p2.split())
            assert phrase_similarity(p1, p2) <= max_possible_similarity(m, n) + 1e-12
