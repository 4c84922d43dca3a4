import json
from fractions import Fraction
from itertools import product
from math import comb

import pytest

from patternlab.automaton import build_automaton
from patternlab.core import canonical_patterns, occ
from patternlab.transfer import (avoidance_probability, birth_bound, count_avoiders,
                                 count_sequence, growth_rate, simulate, transition_matrix)


def brute_f0(v, k, n):
    return sum(1 for w in product(range(1, k + 1), repeat=n) if occ(v, w) == 0)


@pytest.mark.parametrize("v, k", [("123", 4), ("213", 5), ("1213", 3), ("11", 3), ("12", 1)])
def test_matrix_invariants(v, k):
    g = build_automaton(v, k)
    P = transition_matrix(g)
    m = g.live_count
    d = g.pattern.distinct
    dense = P.dense()
    assert P.size == m + 1
    for s, row in enumerate(dense):
        assert sum(row) == 1
    for s in range(m):
        for t in range(m):
            if s != t and dense[s][t]:
                assert dense[s][t] == Fraction(1, k)
            if t < s:
                assert dense[s][t] == 0
        assert dense[s][s] == 1 - Fraction(len(g.advancing[s]), k)
        if k >= d:
            assert dense[s][s] <= Fraction(d - 1, k)
    if k >= d:
        assert dense[0][0] == Fraction(d - 1, k)
    assert dense[m][m] == 1


def test_matrix_example_diagonal():
    g = build_automaton("123", 4)
    P = transition_matrix(g)
    s = g.index((1, 1, 1, 0))
    assert P[s, s] == Fraction(1, 2)


def test_matrix_json():
    doc = transition_matrix(build_automaton("12", 2)).to_json()
    assert doc["order"] == ["(e)", "(1)", "sink"]
    assert doc["entries"][0] == [[1, 2], [1, 2], [0, 1]]
    assert json.loads(json.dumps(doc)) == doc


def test_count_examples():
    assert count_avoiders(build_automaton("12", 2), 3) == comb(4, 3)
    assert count_avoiders(build_automaton("2413", 5), 0) == 1
    assert count_avoiders(build_automaton("123", 4), 3) == 60 == brute_f0("123", 4, 3)


@pytest.mark.parametrize("v", [str(p) for p in canonical_patterns(3)] + ["12", "11", "1324"])
def test_count_matches_brute_force(v):
    for k in range(1, 4):
        seq = count_sequence(build_automaton(v, k), 6)
        assert seq == [brute_f0(v, k, n) for n in range(7)]


def test_mass_conservation():
    for v, k in [("123", 4), ("1213", 4), ("11", 3)]:
        count_sequence(build_automaton(v, k), 30, check_mass=True)


def test_avoidance_probability():
    g = build_automaton("123", 4)
    assert avoidance_probability(g, 3) == Fraction(15, 16)
    assert avoidance_probability(g, 0) == 1
    probs = [avoidance_probability(g, n) for n in range(20)]
    assert all(a >= b for a, b in zip(probs, probs[1:]))


def test_growth_rate_examples():
    assert growth_rate(build_automaton("123", 4)) == (2, False)
    assert growth_rate(build_automaton("11", 3)) == (0, False)
    assert growth_rate(build_automaton("213", 5)).rate == 2
    assert growth_rate(build_automaton("1234", 2)) == (2, True)


def test_d1_pattern_counts():
    # 11-avoiders over [3] are the words with distinct letters
    g = build_automaton("11", 3)
    assert count_sequence(g, 5) == [1, 3, 6, 6, 0, 0]


def test_birth_bound_basics():
    assert birth_bound(4, 3, 3, 0).value == 1
    with pytest.raises(ValueError, match="d >= 2"):
        birth_bound(3, 1, 2, 5)
    assert not birth_bound(4, 3, 3, 12).in_regime
    assert birth_bound(4, 3, 3, 13).in_regime


def test_birth_bound_sandwich_123():
    g = build_automaton("123", 4)
    n = 13
    f0 = count_avoiders(g, n)
    bound = birth_bound(4, 3, 3, n)
    # direct evaluation of the bound at n = 13
    direct = 2**13 * sum(comb(13, i) * Fraction(2, 2) ** i for i in range(13))
    assert bound.value == direct
    assert 2**n <= f0 <= bound.value


def test_simulate_trivial_and_deterministic():
    g = build_automaton("123", 4)
    res = simulate(g, 0, 1000, seed=7)
    assert res.hits == res.trials == 1000
    a = simulate(g, 10, 20_000, seed=42)
    b = simulate(g, 10, 20_000, seed=42)
    assert a == b
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())
    assert simulate(g, 10, 20_000, seed=42, threads=3) == a
    assert simulate(g, 10, 20_000, seed=43) != a
    with pytest.raises(ValueError):
        simulate(g, 5, 0)


def test_simulate_close_to_exact():
    g = build_automaton("123", 4)
    res = simulate(g, 10, 100_000, seed=2024)
    exact = avoidance_probability(g, 10)
    assert abs(float(res.estimate) - float(exact)) <= 4 * res.std_error
    assert 0 <= res.hits <= res.trials
