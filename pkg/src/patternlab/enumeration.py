"""Brute-force ground truth over ``[k]^n`` and over permutations.

Occurrences are counted straight from the definition: for every set of
``len(v)`` positions, compare all pairs of letters against the pattern. The
comparison signs of position pairs are computed once per chunk of words and
shared by every position set and every pattern.
"""
from __future__ import annotations

import csv
import io
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterator, Sequence

import numpy as np

from .automaton import SINK, DEFAULT_STATE_LIMIT, StateLimitError, build_automaton
from .core import Pattern, as_pattern, as_pattern_set

DEFAULT_BUDGET = 10**8
DEFAULT_PERM_CAP = 10
CHUNK = 1 << 18


class BudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class CountTable:
    """Distribution ``r -> #{w : occ(w) = r}`` over words or permutations."""

    patterns: tuple[str, ...]
    domain: str  # "words" or "perms"
    k: int
    n: int
    counts: dict[int, int] = field(hash=False)

    def __getitem__(self, r: int) -> int:
        return self.counts.get(r, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def expected_total(self) -> int:
        return factorial(self.n) if self.domain == "perms" else self.k**self.n

    def to_json(self) -> dict:
        return {
            "patterns": list(self.patterns),
            "domain": self.domain,
            "k": self.k,
            "n": self.n,
            "counts": {str(r): str(c) for r, c in sorted(self.counts.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "CountTable":
        return cls(
            tuple(data["patterns"]),
            data["domain"],
            int(data["k"]),
            int(data["n"]),
            {int(r): int(c) for r, c in data["counts"].items()},
        )

    def csv_rows(self) -> list[tuple]:
        return [(self.k, self.n, r, str(c)) for r, c in sorted(self.counts.items())]


@dataclass(frozen=True)
class SubseqHistogram:
    """``s -> f_{r,s}``: words with ``r`` occurrences whose union has size ``s``."""

    pattern: str
    k: int
    n: int
    r: int
    counts: dict[int, int] = field(hash=False)

    def __getitem__(self, s: int) -> int:
        return self.counts.get(s, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern,
            "k": self.k,
            "n": self.n,
            "r": self.r,
            "counts": {str(s): str(c) for s, c in sorted(self.counts.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "SubseqHistogram":
        return cls(
            data["pattern"], int(data["k"]), int(data["n"]), int(data["r"]),
            {int(s): int(c) for s, c in data["counts"].items()},
        )

    def csv_rows(self) -> list[tuple]:
        return [(self.k, self.n, self.r, s, str(c)) for s, c in sorted(self.counts.items())]


def to_csv(rows: Sequence[tuple], header: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# -- word generation ---------------------------------------------------------

def word_block(k: int, n: int, lo: int, hi: int) -> np.ndarray:
    """Words with lexicographic ranks ``lo..hi-1`` in ``[k]^n`` as rows."""
    idx = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((hi - lo, n), dtype=np.int8)
    for pos in range(n - 1, -1, -1):
        idx, digit = np.divmod(idx, k)
        out[:, pos] = digit + 1
    return out


def word_chunks(k: int, n: int, first: int | None = None) -> Iterator[np.ndarray]:
    """Lexicographic chunks of ``[k]^n``, optionally one first-letter block."""
    if n == 0:
        yield np.zeros((1, 0), dtype=np.int8)
        return
    block = k ** (n - 1)
    lo, hi = (0, k**n) if first is None else ((first - 1) * block, first * block)
    for start in range(lo, hi, CHUNK):
        yield word_block(k, n, start, min(hi, start + CHUNK))


def perm_chunks(n: int, first: int | None = None) -> Iterator[np.ndarray]:
    if n == 0:
        yield np.zeros((1, 0), dtype=np.int8)
        return
    heads = range(1, n + 1) if first is None else [first]
    for h in heads:
        rest = [x for x in range(1, n + 1) if x != h]
        buf = []
        for p in permutations(rest):
            buf.append((h,) + p)
            if len(buf) == CHUNK:
                yield np.array(buf, dtype=np.int8)
                buf = []
        if buf:
            yield np.array(buf, dtype=np.int8)


# -- occurrence counting on batches -------------------------------------------

def _pair_signs(words: np.ndarray) -> dict[tuple[int, int], np.ndarray]:
    n = words.shape[1]
    w = words.astype(np.int16)
    return {(a, b): np.sign(w[:, a] - w[:, b]) for a in range(n) for b in range(a + 1, n)}


def _pattern_signs(v: Pattern) -> list[tuple[int, int, int]]:
    x = v.letters
    return [
        (p, q, (x[p] > x[q]) - (x[p] < x[q]))
        for p in range(len(x)) for q in range(p + 1, len(x))
    ]


def occurrence_matches(v: Pattern, words: np.ndarray, signs=None) -> Iterator[tuple[tuple[int, ...], np.ndarray]]:
    """Yield ``(positions, mask)`` for each position set, mask = is occurrence."""
    if signs is None:
        signs = _pair_signs(words)
    want = _pattern_signs(v)
    for idx in combinations(range(words.shape[1]), v.length):
        mask = np.ones(words.shape[0], dtype=bool)
        for p, q, s in want:
            mask &= signs[(idx[p], idx[q])] == s
        yield idx, mask


def occ_batch(patterns, words: np.ndarray) -> np.ndarray:
    """Total occurrence count of the pattern set in each row of ``words``."""
    members = as_pattern_set(patterns)
    signs = _pair_signs(words)
    total = np.zeros(words.shape[0], dtype=np.int64)
    for v in members:
        for _, mask in occurrence_matches(v, words, signs):
            total += mask
    return total


def _tally(patterns, chunks) -> Counter:
    tally: Counter = Counter()
    for words in chunks:
        values, freq = np.unique(occ_batch(patterns, words), return_counts=True)
        for r, c in zip(values.tolist(), freq.tolist()):
            tally[r] += c
    return tally


def _parallel_tally(patterns, blocks, threads: int) -> Counter:
    if threads <= 1:
        return sum((_tally(patterns, b) for b in blocks), Counter())
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda b: _tally(patterns, b), blocks))
    return sum(parts, Counter())


def _label(members) -> tuple[str, ...]:
    return tuple(str(p) for p in members)


def count_words(patterns, k: int, n: int, *, avoiders_only: bool = False,
                budget: int = DEFAULT_BUDGET, threads: int = 1,
                state_limit: int = DEFAULT_STATE_LIMIT) -> CountTable:
    """Exact occurrence distribution over all ``k**n`` words.

    With ``avoiders_only`` only ``r = 0`` is counted, by depth-first
    generation that abandons a prefix as soon as an automaton absorbs it.
    """
    members = as_pattern_set(patterns)
    if k < 1 or n < 0:
        raise ValueError(f"need k >= 1 and n >= 0, got k={k}, n={n}")
    if k**n > budget:
        raise BudgetError(
            f"{k}^{n} = {k**n} words exceeds the enumeration budget {budget}; "
            "use transfer-matrix counting for r = 0"
        )
    if avoiders_only:
        return CountTable(_label(members), "words", k, n,
                          {0: _pruned_avoiders(members, k, n, state_limit)})
    if n == 0:
        return CountTable(_label(members), "words", k, 0, {0: 1})
    blocks = [word_chunks(k, n, first) for first in range(1, k + 1)]
    tally = _parallel_tally(members, blocks, threads)
    return CountTable(_label(members), "words", k, n, dict(sorted(tally.items())))


def _pruned_avoiders(members, k: int, n: int, state_limit: int) -> int:
    graphs = [build_automaton(v, k, state_limit) for v in members]
    total = 0
    stack = [(tuple(g.start for g in graphs), 0)]
    while stack:
        states, depth = stack.pop()
        if depth == n:
            total += 1
            continue
        for i in range(1, k + 1):
            nxt = tuple(g.delta[s][i - 1] for g, s in zip(graphs, states))
            if SINK not in nxt:
                stack.append((nxt, depth + 1))
    return total


def count_perms(patterns, n: int, *, cap: int = DEFAULT_PERM_CAP, threads: int = 1) -> CountTable:
    members = as_pattern_set(patterns)
    if n > cap:
        raise BudgetError(f"permutation length {n} exceeds cap {cap}")
    if n == 0:
        return CountTable(_label(members), "perms", 0, 0, {0: 1})
    blocks = [perm_chunks(n, first) for first in range(1, n + 1)]
    tally = _parallel_tally(members, blocks, threads)
    return CountTable(_label(members), "perms", n, n, dict(sorted(tally.items())))


def subseq_histogram(v, k: int, n: int, r: int, *, budget: int = DEFAULT_BUDGET) -> SubseqHistogram:
    """Split the words with exactly ``r`` occurrences by occurrence-subsequence length."""
    v = as_pattern(v)
    if r < 1:
        raise ValueError("histogram needs r >= 1")
    if k**n > budget:
        raise BudgetError(f"{k}^{n} words exceeds the enumeration budget {budget}")
    tally: Counter = Counter()
    for words in word_chunks(k, n):
        count = np.zeros(words.shape[0], dtype=np.int64)
        covered = np.zeros(words.shape, dtype=bool)
        for idx, mask in occurrence_matches(v, words):
            count += mask
            covered[:, list(idx)] |= mask[:, None]
        sizes = covered.sum(axis=1)[count == r]
        values, freq = np.unique(sizes, return_counts=True)
        for s, c in zip(values.tolist(), freq.tolist()):
            tally[s] += c
    return SubseqHistogram(str(v), k, n, r, dict(sorted(tally.items())))


# -- Wilf-equivalence tooling -------------------------------------------------

@dataclass
class WilfVerdict:
    equal: bool
    witness: dict | None = None
    unexplored: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"equal": self.equal, "witness": self.witness,
                "unexplored": [list(c) for c in self.unexplored]}


def avoiders(v, k: int, n: int, *, state_limit: int = DEFAULT_STATE_LIMIT,
             budget: int = DEFAULT_BUDGET) -> int:
    """``f_0`` via the transfer matrix, falling back to brute force."""
    from .transfer import count_avoiders

    try:
        return count_avoiders(build_automaton(v, k, state_limit), n)
    except StateLimitError:
        return count_words(v, k, n, budget=budget)[0]


def wilf_words_compare(v1, v2, k_max: int, n_max: int, *,
                       state_limit: int = DEFAULT_STATE_LIMIT,
                       budget: int = DEFAULT_BUDGET) -> WilfVerdict:
    """First ``(k, n)`` in lexicographic order where avoider counts differ."""
    from .transfer import count_sequence

    v1, v2 = as_pattern(v1), as_pattern(v2)
    unexplored = []
    for k in range(1, k_max + 1):
        seqs = []
        for v in (v1, v2):
            try:
                seqs.append(count_sequence(build_automaton(v, k, state_limit), n_max))
            except StateLimitError:
                seqs.append(None)
        for n in range(n_max + 1):
            try:
                a, b = (
                    s[n] if s is not None else count_words(v, k, n, budget=budget)[0]
                    for s, v in zip(seqs, (v1, v2))
                )
            except BudgetError:
                unexplored.append((k, n))
                continue
            if a != b:
                return WilfVerdict(False, {"k": k, "n": n, str(v1): str(a), str(v2): str(b)},
                                   unexplored)
    return WilfVerdict(True, None, unexplored)


def wilf_perms_compare(v1, v2, n_max: int, *, cap: int = DEFAULT_PERM_CAP) -> WilfVerdict:
    v1, v2 = as_pattern(v1), as_pattern(v2)
    unexplored = []
    for n in range(n_max + 1):
        try:
            a = count_perms(v1, n, cap=cap)[0]
            b = count_perms(v2, n, cap=cap)[0]
        except BudgetError:
            unexplored.append((n,))
            continue
        if a != b:
            return WilfVerdict(False, {"n": n, str(v1): str(a), str(v2): str(b)}, unexplored)
    return WilfVerdict(True, None, unexplored)


def occurrence_bound(ell: int, n: int) -> int:
    return comb(n, ell)
