"""Exact identities linking word counts, permutation counts and closed forms.

Everything here is integer or ``Fraction`` arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .cache import CountProvider
from .core import as_pattern_set
from .enumeration import occ_batch, word_chunks


class IdentityViolation(ArithmeticError):
    pass


def _source(source):
    return source if source is not None else CountProvider()


def perms_from_words(patterns, r: int, n: int, source=None) -> int:
    """Alternating binomial sum of ``f_r([k]^n)`` over ``k = 1..n``."""
    if n < 1:
        raise ValueError("the alternating sum starts at n = 1")
    source = _source(source)
    return sum(
        (-1) ** (n - k) * comb(n, k) * source.words(patterns, k, n)[r]
        for k in range(1, n + 1)
    )


# -- truncated power series ---------------------------------------------------

@dataclass(frozen=True)
class SeriesTruncation:
    """Coefficients ``c[0..N]`` of a power series modulo ``x^(N+1)``."""

    coefficients: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficients[n] if 0 <= n <= self.order else Fraction(0)

    def __add__(self, other: "SeriesTruncation") -> "SeriesTruncation":
        return SeriesTruncation(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    @classmethod
    def zero(cls, order: int) -> "SeriesTruncation":
        return cls((Fraction(0),) * (order + 1))

    def negate_argument(self) -> "SeriesTruncation":
        """``f(x) -> f(-x)``."""
        return SeriesTruncation(tuple(c * (-1) ** i for i, c in enumerate(self.coefficients)))

    def derivative(self, times: int = 1) -> "SeriesTruncation":
        """k-th derivative; the top ``times`` coefficients become unknown and are dropped."""
        c = list(self.coefficients)
        for _ in range(times):
            c = [i * c[i] for i in range(1, len(c))]
        return SeriesTruncation(tuple(c))

    def times_monomial(self, coeff: Fraction, power: int, order: int) -> "SeriesTruncation":
        out = [Fraction(0)] * (order + 1)
        for i, c in enumerate(self.coefficients):
            if i + power <= order:
                out[i + power] = coeff * c
        return SeriesTruncation(tuple(out))


def egf(values: dict[int, int], order: int) -> SeriesTruncation:
    """``sum_{n>=1} values[n] x^n / n!`` truncated at ``order``."""
    return SeriesTruncation(
        (Fraction(0),) + tuple(Fraction(values[n], factorial(n)) for n in range(1, order + 1))
    )


@dataclass(frozen=True)
class EgfCheck:
    ok: bool
    order: int
    lhs: SeriesTruncation
    rhs: SeriesTruncation

    def failures(self) -> list[int]:
        return [n for n in range(1, self.order + 1) if self.lhs[n] != self.rhs[n]]


def egf_identity_check(patterns, r: int, order: int, source=None) -> EgfCheck:
    """Compare the permutation EGF with the derivative series of the word EGFs.

    The right side is ``sum_k (-x)^k/k! * d^k/dx^k [W_k(-x)]``. The k-th
    term starts at ``x^k``, so only ``k <= order`` contributes.
    """
    source = _source(source)
    lhs = egf({n: source.perms(patterns, n)[r] for n in range(1, order + 1)}, order)
    rhs = SeriesTruncation.zero(order)
    for k in range(1, order + 1):
        w = egf({n: source.words(patterns, k, n)[r] for n in range(1, order + 1)}, order)
        # d^k/dx^k [W(-x)] = (-1)^k W^(k)(-x), and (-x)^k = (-1)^k x^k
        dk = w.derivative(k).negate_argument()
        term = dk.times_monomial(Fraction((-1) ** k * (-1) ** k, factorial(k)), k, order)
        rhs = rhs + term
    ok = all(lhs[n] == rhs[n] for n in range(1, order + 1))
    return EgfCheck(ok, order, lhs, rhs)


# -- closed forms -------------------------------------------------------------

def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("n must be >= 0")
    return comb(2 * n, n) // (n + 1)


def burstein_closed_form(k: int, n: int, *, shifted: bool = True) -> int:
    """Number of words in ``[k]^n`` avoiding 123 (equivalently 132).

    ``2^(n-2(k-2)) * sum_j C(n+2j, n) * sum_{m>=j} Cat(m) * C(2(k-m-2), k-m-2)``
    plus one when ``k = 1``. The power of two may be fractional, so the sum is
    evaluated exactly and must come out integral. ``shifted=False`` uses
    ``C(2(k-m), k-m)`` as the second binomial, which does not count avoiders
    (it overcounts by 6 at k = 2) and is kept for comparison.
    """
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and n >= 1")
    total = Fraction(0)
    for j in range(k - 1):
        inner = Fraction(0)
        for m in range(j, k - 1):
            c = k - m - 2 if shifted else k - m
            inner += Fraction(comb(2 * m, m), m + 1) * comb(2 * c, c)
        total += comb(n + 2 * j, n) * inner
    value = (1 if k == 1 else 0) + Fraction(2) ** (n - 2 * (k - 2)) * total
    if value.denominator != 1:
        raise IdentityViolation(f"closed form is not an integer at k={k}, n={n}: {value}")
    return value.numerator


def weak_words_closed_form(k: int, n: int) -> int:
    """Weakly decreasing words of length ``n`` over ``[k]`` (the 12-avoiders)."""
    return comb(n + k - 1, n)


def binomial_identity_check(n: int) -> bool:
    total = sum((-1) ** (n - k) * comb(n, k) * comb(n + k - 1, n) for k in range(1, n + 1))
    return total == 1


@dataclass(frozen=True)
class SdiscCheck:
    ok: bool
    lhs: int
    rhs: int


def sdisc_check(v, n: int, source=None) -> SdiscCheck:
    """``f_0([n]^n) <= sum_i C(n,i)^2 f_0([i]^(n-i)) f_0(S_i)``."""
    source = _source(source)
    lhs = source.words(v, n, n)[0]
    rhs = sum(
        comb(n, i) ** 2 * source.words(v, i, n - i)[0] * source.perms(v, i)[0]
        for i in range(1, n + 1)
    )
    return SdiscCheck(lhs <= rhs, lhs, rhs)


# -- words using an exact letter set -------------------------------------------

def surjective_count(patterns, a: int, n: int, r: int = 0) -> int:
    """Words of ``[a]^n`` using every letter of ``[a]`` with exactly ``r`` occurrences."""
    members = as_pattern_set(patterns)
    if a == 0:
        return 1 if n == 0 and r == 0 else 0
    total = 0
    for words in word_chunks(a, n):
        onto = np.ones(words.shape[0], dtype=bool)
        for letter in range(1, a + 1):
            onto &= (words == letter).any(axis=1)
        total += int(np.count_nonzero(onto & (occ_batch(members, words) == r)))
    return total


@dataclass(frozen=True)
class YnCheck:
    ok: bool
    direct: int
    alternating: int
    partition_ok: bool


def ynA_decomposition_check(patterns, a: int, n: int, r: int = 0, source=None) -> YnCheck:
    """Direct surjective count versus inclusion-exclusion over letter subsets.

    Also checks the partition of ``[a]^n`` by the exact set of letters used.
    """
    source = _source(source)
    direct = surjective_count(patterns, a, n, r)
    alternating = sum(
        (-1) ** j * comb(a, j) * (source.words(patterns, a - j, n)[r] if a - j else 0)
        for j in range(a)
    )
    parts = sum(comb(a, j) * surjective_count(patterns, a - j, n, r) for j in range(a + 1))
    return YnCheck(direct == alternating, direct, alternating,
                   parts == source.words(patterns, a, n)[r])
