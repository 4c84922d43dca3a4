from itertools import product
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from patternlab.core import (Pattern, PatternError, canonical_patterns, canonicalize,
                             is_order_isomorphic, occ, occ_set, occurrence_subsequence,
                             occurrences, parse_word)

words = st.lists(st.integers(1, 5), max_size=8).map(tuple)
patterns = st.lists(st.integers(1, 4), min_size=2, max_size=4).map(Pattern)


def test_canonicalize_examples():
    p = canonicalize((3, 3, 4, 1, 5))
    assert p.letters == (2, 2, 3, 1, 4)
    assert (p.length, p.distinct) == (5, 4)
    assert canonicalize((1, 2, 3)).letters == (1, 2, 3)
    # rank compression of 9 4 7 over sorted distinct letters 4 < 7 < 9
    assert canonicalize((9, 4, 7)).letters == (3, 1, 2)


def test_pattern_too_short():
    with pytest.raises(PatternError, match="too short"):
        Pattern((1,))


def test_patterns_compare_by_class():
    assert Pattern((2, 5)) == Pattern((1, 2))
    assert len({Pattern((3, 1, 2)), Pattern((9, 4, 7))}) == 1


@pytest.mark.parametrize("text, word", [
    ("35239", (3, 5, 2, 3, 9)),
    ("3,5,12", (3, 5, 12)),
    ("3 5 12", (3, 5, 12)),
    ("", ()),
])
def test_parse_word(text, word):
    assert parse_word(text) == word


def test_parse_word_rejects_junk():
    with pytest.raises(PatternError):
        parse_word("1a2")
    with pytest.raises(PatternError):
        parse_word("0,1")


def test_order_isomorphic_examples():
    assert is_order_isomorphic((3, 5, 2, 3), (2, 3, 1, 2))
    assert is_order_isomorphic((4, 4, 1), (4, 4, 1))
    assert not is_order_isomorphic((1, 2), (2, 1))
    assert not is_order_isomorphic((1, 2), (1, 2, 3))


def test_occ_examples():
    assert occ("21", (3, 5, 2, 3, 9)) == 3
    assert occ("123", (1, 2)) == 0
    # pairs i<j with w_i < w_j in 1122: (1,3) (1,4) (2,3) (2,4)
    assert occ("12", (1, 1, 2, 2)) == 4


def test_occurrences_examples():
    assert occurrences("21", (3, 5, 2, 3, 9)) == [(1, 3), (2, 3), (2, 4)]
    assert occurrences("12", (2, 1)) == []
    assert occurrences("123", (1, 2, 3, 4)) == [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]


def test_occurrence_subsequence_examples():
    w = (3, 5, 2, 3, 9)
    idx = occurrence_subsequence("21", w)
    assert idx == (1, 2, 3, 4)
    assert tuple(w[i - 1] for i in idx) == (3, 5, 2, 3)
    assert occurrence_subsequence("21", (1, 2, 3)) == ()
    assert occurrence_subsequence("12", (1, 3, 2)) == (1, 2, 3)


def test_occ_set_examples():
    assert occ_set(["12", "21"], (1, 2)) == 1
    assert occ_set(["123"], (1, 2, 3, 4)) == 4


@given(st.permutations(range(1, 7)))
def test_occ_set_ascents_and_inversions(perm):
    assert occ_set(["12", "21"], perm) == comb(len(perm), 2)


@given(patterns, words)
@settings(max_examples=300)
def test_occ_matches_naive_enumeration(v, w):
    assert occ(v, w) == len(occurrences(v, w))


@given(patterns, words, st.integers(0, 3))
def test_occ_invariant_under_relabeling(v, w, shift):
    # strictly increasing relabeling x -> 2x + shift keeps the order type
    relabeled = tuple(2 * x + shift for x in w)
    assert is_order_isomorphic(w, relabeled)
    assert occ(v, w) == occ(v, relabeled)


@given(patterns, words)
def test_subsequence_is_union_of_occurrences(v, w):
    idx = set(occurrence_subsequence(v, w))
    occs = occurrences(v, w)
    assert idx == set().union(*map(set, occs)) if occs else idx == set()
    # every occurrence lies inside it
    assert all(set(o) <= idx for o in occs)


@pytest.mark.parametrize("k, n", [(k, n) for k in (1, 2, 3) for n in range(7)])
def test_distribution_sums_to_all_words(k, n):
    for v in ("12", "121", "123"):
        hist = {}
        for w in product(range(1, k + 1), repeat=n):
            r = occ(v, w)
            hist[r] = hist.get(r, 0) + 1
        assert sum(hist.values()) == k**n


def test_canonical_patterns_counts():
    # ordered set partitions (Fubini numbers) 3, 13, 75
    assert [len(canonical_patterns(n)) for n in (2, 3, 4)] == [3, 13, 75]
    assert len(canonical_patterns(4, max_distinct=2)) == 1 + 14
