from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from patternlab.automaton import build_automaton
from patternlab.cache import MissingCountError, TableSource
from patternlab.enumeration import count_perms, count_words
from patternlab.identities import (IdentityViolation, SeriesTruncation, binomial_identity_check,
                                   burstein_closed_form, catalan, egf_identity_check,
                                   perms_from_words, sdisc_check, surjective_count,
                                   weak_words_closed_form, ynA_decomposition_check)
from patternlab.transfer import count_avoiders


def test_perms_from_words_examples(provider):
    # 3*1 - 3*4 + 1*10
    assert perms_from_words("12", 0, 3, provider) == 3 * 1 - 3 * 4 + 10 == 1
    assert perms_from_words("2413", 0, 1, provider) == 1
    assert perms_from_words("123", 0, 4, provider) == 14 == catalan(4)


def test_perms_from_words_pattern_set(provider):
    for n in range(1, 6):
        for r in range(3):
            assert perms_from_words(["12", "21"], r, n, provider) == \
                count_perms(["12", "21"], n)[r]


def test_perms_from_words_missing_table():
    source = TableSource([count_words("12", 1, 2), count_words("12", 2, 2)])
    assert perms_from_words("12", 0, 2, source) == 1
    with pytest.raises(MissingCountError):
        perms_from_words("12", 0, 3, source)


def test_series_operations():
    s = SeriesTruncation(tuple(Fraction(c) for c in (1, 2, 3, 4)))
    assert s.negate_argument().coefficients == (1, -2, 3, -4)
    assert s.derivative().coefficients == (2, 6, 12)
    assert s.derivative(2).coefficients == (6, 24)
    assert s.times_monomial(Fraction(1, 2), 2, 3).coefficients == (0, 0, Fraction(1, 2), 1)


def test_egf_examples(provider):
    res = egf_identity_check("12", 0, 6, provider)
    assert res.ok and res.failures() == []
    assert [res.lhs[n] for n in range(1, 7)] == [Fraction(1, factorial(n)) for n in range(1, 7)]
    res = egf_identity_check("123", 1, 6, provider)
    assert res.ok
    assert res.lhs[1] == res.rhs[1] == 0


def test_egf_detects_a_wrong_table():
    good = [count_words("12", k, n) for k in range(1, 4) for n in range(1, 4)]
    perms = [count_perms("12", n) for n in range(1, 4)]
    broken = count_words("12", 2, 3)
    broken = type(broken)(broken.patterns, "words", 2, 3, {0: broken[0] + 1})
    tables = [t for t in good if (t.k, t.n) != (2, 3)] + [broken] + perms
    res = egf_identity_check("12", 0, 3, TableSource(tables))
    assert not res.ok and res.failures() == [3]


def test_catalan():
    assert [catalan(n) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_burstein_examples():
    assert all(burstein_closed_form(1, n) == 1 for n in range(1, 9))
    assert burstein_closed_form(3, 4) == count_words("123", 3, 4)[0]
    assert burstein_closed_form(4, 8) == count_avoiders(build_automaton("123", 4), 8)


def test_burstein_unshifted_binomial_does_not_count():
    assert [burstein_closed_form(2, n, shifted=False) for n in range(1, 5)] == \
        [6 * 2**n for n in range(1, 5)]
    with pytest.raises(IdentityViolation):
        burstein_closed_form(4, 1, shifted=False)


def test_weak_words():
    assert weak_words_closed_form(1, 5) == 1
    assert weak_words_closed_form(2, 3) == 4
    assert all(weak_words_closed_form(3, n) == count_words("12", 3, n)[0] for n in range(1, 8))


def test_binomial_identity():
    assert binomial_identity_check(1)
    assert 3 - 12 + 10 == 1 and binomial_identity_check(3)
    assert all(binomial_identity_check(n) for n in range(1, 26))


def test_sdisc_examples(provider):
    res = sdisc_check("123", 1, provider)
    assert (res.ok, res.lhs, res.rhs) == (True, 1, 1)
    res = sdisc_check("123", 4, provider)
    assert res.ok and res.lhs == 210
    res = sdisc_check("12", 5, provider)
    # closed forms for both sides: weak words and a single decreasing permutation
    rhs = sum(comb(5, i) ** 2 * weak_words_closed_form(i, 5 - i) for i in range(1, 6))
    assert (res.lhs, res.rhs) == (weak_words_closed_form(5, 5), rhs)
    assert res.ok


def test_surjective_words():
    # words over [3] of length 4 using every letter: 3! * S(4, 3) = 36
    total = sum(surjective_count("123", 3, 4, r) for r in range(5))
    assert total == 36


def test_yn_examples(provider):
    assert surjective_count("12", 1, 4) == 1
    assert surjective_count("11", 1, 4) == 0
    assert surjective_count("123", 4, 4) == count_perms("123", 4)[0]
    res = ynA_decomposition_check("123", 3, 4, source=provider)
    assert res.ok and res.partition_ok and res.direct == res.alternating


@given(st.sampled_from(["12", "123", "132", "1212"]), st.integers(1, 4), st.integers(1, 5),
       st.integers(0, 2))
def test_yn_decomposition_property(v, a, n, r):
    res = ynA_decomposition_check(v, a, n, r)
    assert res.ok and res.partition_ok
