"""Words, patterns, order-isomorphism and exact occurrence counting.

Words are plain tuples of positive ints. A :class:`Pattern` always holds the
canonical (rank-compressed) representative of its order-isomorphism class.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

Word = tuple[int, ...]


class PatternError(ValueError):
    """Raised for malformed words or patterns."""


def as_word(letters: Iterable[int]) -> Word:
    word = tuple(int(x) for x in letters)
    if any(x < 1 for x in word):
        raise PatternError(f"letters must be positive integers, got {word}")
    return word


def parse_word(text: str) -> Word:
    """Parse ``"35239"``, ``"3,5,2,3,9"`` or ``"3 5 2 3 9"``.

    A single token without separators is read digit by digit, so letters
    above 9 need commas or whitespace.
    """
    text = text.strip()
    if not text:
        return ()
    tokens = [t for t in re.split(r"[,\s]+", text) if t]
    if len(tokens) == 1 and not re.search(r"[,\s]", text):
        token = tokens[0]
        if not token.isdigit():
            raise PatternError(f"cannot parse word {text!r}")
        return as_word(int(c) for c in token)
    if not all(t.isdigit() for t in tokens):
        raise PatternError(f"cannot parse word {text!r}")
    return as_word(int(t) for t in tokens)


def format_word(word: Sequence[int]) -> str:
    if all(x <= 9 for x in word):
        return "".join(map(str, word))
    return ",".join(map(str, word))


def rank_compress(word: Sequence[int]) -> Word:
    ranks = {x: i + 1 for i, x in enumerate(sorted(set(word)))}
    return tuple(ranks[x] for x in word)


@dataclass(frozen=True, order=True)
class Pattern:
    """A classical pattern, stored in canonical form over ``{1..d}``."""

    letters: Word

    def __post_init__(self):
        letters = tuple(self.letters)
        if len(letters) < 2:
            raise PatternError(f"pattern too short: {letters} (need length >= 2)")
        object.__setattr__(self, "letters", rank_compress(as_word(letters)))

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        return cls(parse_word(text))

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def distinct(self) -> int:
        return max(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return format_word(self.letters)


def canonicalize(word: Sequence[int]) -> Pattern:
    return Pattern(tuple(word))


def as_pattern(v) -> Pattern:
    if isinstance(v, Pattern):
        return v
    if isinstance(v, str):
        return Pattern.parse(v)
    return Pattern(tuple(v))


def as_pattern_set(patterns) -> tuple[Pattern, ...]:
    """Normalize a pattern or an iterable of patterns to a sorted tuple."""
    if isinstance(patterns, (Pattern, str)):
        return (as_pattern(patterns),)
    if isinstance(patterns, tuple) and patterns and isinstance(patterns[0], int):
        return (as_pattern(patterns),)
    members = tuple(sorted({as_pattern(p) for p in patterns}))
    if not members:
        raise PatternError("pattern set must be non-empty")
    return members


def is_order_isomorphic(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    n = len(a)
    for p in range(n):
        for q in range(p + 1, n):
            if (a[p] < a[q]) != (b[p] < b[q]) or (a[p] == a[q]) != (b[p] == b[q]):
                return False
    return True


def occurrences(v, w: Sequence[int]) -> list[tuple[int, ...]]:
    """All occurrences of ``v`` in ``w`` as 1-based index tuples, sorted.

    Naive scan over every ``len(v)``-subset of positions; this is the
    reference the faster counters are tested against.
    """
    v = as_pattern(v)
    found = []
    for idx in combinations(range(len(w)), v.length):
        if is_order_isomorphic([w[j] for j in idx], v.letters):
            found.append(tuple(j + 1 for j in idx))
    return found


def occ(v, w: Sequence[int]) -> int:
    """Number of occurrences of ``v`` in ``w``.

    Left-to-right dynamic programme over partial embeddings. A partial
    embedding of the prefix ``v[:j]`` is summarised by the values assigned to
    the pattern letters seen so far; the next letter of ``w`` extends it iff
    it respects every comparison with those values.
    """
    v = as_pattern(v)
    ell, d = v.length, v.distinct
    if len(w) < ell:
        return 0
    # states[j]: {assignment tuple (0 = unassigned) -> count}
    states: list[dict[tuple[int, ...], int]] = [dict() for _ in range(ell)]
    states[0][(0,) * (d + 1)] = 1
    total = 0
    for x in w:
        # descending j so a letter extends each embedding at most once
        for j in range(ell - 1, -1, -1):
            if not states[j]:
                continue
            letter = v.letters[j]
            for assign, count in list(states[j].items()):
                if not _fits(assign, letter, x, d):
                    continue
                if j + 1 == ell:
                    total += count
                    continue
                if assign[letter]:
                    nxt = assign
                else:
                    nxt = assign[:letter] + (x,) + assign[letter + 1:]
                bucket = states[j + 1]
                bucket[nxt] = bucket.get(nxt, 0) + count
    return total


def _fits(assign: tuple[int, ...], letter: int, x: int, d: int) -> bool:
    if assign[letter]:
        return assign[letter] == x
    for other in range(1, d + 1):
        val = assign[other]
        if not val:
            continue
        if other < letter and not val < x:
            return False
        if other > letter and not val > x:
            return False
    return True


def occurrence_subsequence(v, w: Sequence[int]) -> tuple[int, ...]:
    """1-based indexes of the union of all occurrences (empty if ``w`` avoids)."""
    covered = set()
    for idx in occurrences(v, w):
        covered.update(idx)
    return tuple(sorted(covered))


def occ_set(patterns, w: Sequence[int]) -> int:
    return sum(occ(p, w) for p in as_pattern_set(patterns))


def canonical_patterns(length: int, max_distinct: int | None = None) -> list[Pattern]:
    """Every canonical pattern of the given length, sorted."""
    from itertools import product

    found = set()
    for word in product(range(1, length + 1), repeat=length):
        if set(word) == set(range(1, max(word) + 1)):
            if max_distinct is None or max(word) <= max_distinct:
                found.add(word)
    return [Pattern(w) for w in sorted(found)]
