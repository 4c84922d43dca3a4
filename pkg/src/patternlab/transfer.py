"""Exact avoider counts from the letter-driven Markov chain on automaton states."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple

import numpy as np

from .automaton import SINK, AutomatonGraph

SIM_CHUNK = 8192


@dataclass(frozen=True)
class TransitionMatrix:
    """Row-stochastic matrix over live states (topological order) plus the sink.

    Stored sparsely as the integer matrix ``k * P``: ``rows[s][t]`` is the
    number of letters taking ``s`` to ``t``. The sink is the last index.
    """

    k: int
    labels: tuple[str, ...]
    rows: tuple[dict[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    def count(self, s: int, t: int) -> int:
        return self.rows[s].get(t, 0)

    def __getitem__(self, key) -> Fraction:
        s, t = key
        return Fraction(self.count(s, t), self.k)

    def diagonal(self) -> list[int]:
        return [row.get(s, 0) for s, row in enumerate(self.rows)]

    def is_upper_triangular(self) -> bool:
        return all(t >= s for s, row in enumerate(self.rows) for t in row)

    def dense(self) -> list[list[Fraction]]:
        return [[self[s, t] for t in range(self.size)] for s in range(self.size)]

    def to_json(self) -> dict:
        entries = [[[f.numerator, f.denominator] for f in row] for row in self.dense()]
        return {"order": list(self.labels), "entries": entries}


def transition_matrix(g: AutomatonGraph) -> TransitionMatrix:
    m = g.live_count
    rows = []
    for row in g.delta:
        counts: dict[int, int] = {}
        for t in row:
            t = m if t == SINK else t
            counts[t] = counts.get(t, 0) + 1
        rows.append(counts)
    rows.append({m: g.k})
    labels = tuple(g.label(s) for s in range(m)) + ("sink",)
    return TransitionMatrix(g.k, labels, tuple(rows))


def _sparse_live(g: AutomatonGraph) -> list[tuple[int, tuple[int, ...]]]:
    """Per live state: (diagonal count, live successors with multiplicity)."""
    out = []
    for s, row in enumerate(g.delta):
        stay = sum(1 for t in row if t == s)
        moves = tuple(t for t in row if t != s and t != SINK)
        out.append((stay, moves))
    return out


def count_sequence(g: AutomatonGraph, n_max: int, check_mass: bool = False) -> list[int]:
    """``[f_0(0), f_0(1), ..., f_0(n_max)]`` by iterating the count vector.

    With ``check_mass`` the absorbed mass is tracked as well and live plus
    absorbed mass is asserted to equal ``k**n`` at every step.
    """
    if n_max < 0:
        raise ValueError("length must be non-negative")
    k = g.k
    sparse = _sparse_live(g)
    to_sink = [sum(1 for t in row if t == SINK) for row in g.delta]
    vec = [0] * g.live_count
    vec[g.start] = 1
    absorbed = 0
    out = [1]
    for n in range(1, n_max + 1):
        new = [0] * len(vec)
        if check_mass:
            absorbed *= k  # absorbed words stay absorbed under every letter
        for s, mass in enumerate(vec):
            if not mass:
                continue
            stay, moves = sparse[s]
            if stay:
                new[s] += stay * mass
            for t in moves:
                new[t] += mass
            if check_mass:
                absorbed += to_sink[s] * mass
        vec = new
        live = sum(vec)
        if check_mass and live + absorbed != k**n:
            raise AssertionError(f"mass not conserved at n={n}: {live} + {absorbed} != {k**n}")
        out.append(live)
    return out


def count_avoiders(g: AutomatonGraph, n: int) -> int:
    """Exact number of words in ``[k]^n`` avoiding the pattern."""
    return count_sequence(g, n)[n]


def avoidance_probability(g: AutomatonGraph, n: int) -> Fraction:
    return Fraction(count_avoiders(g, n), g.k**n)


class GrowthRate(NamedTuple):
    rate: int
    degenerate: bool


def growth_rate(g: AutomatonGraph) -> GrowthRate:
    """Largest diagonal entry of the live-restricted count matrix.

    The live block is triangular, so this is its spectral radius exactly.
    When ``k < d`` nothing can be absorbed and every word avoids; the rate is
    then ``k`` and the result is flagged degenerate.
    """
    rate = max(g.k - len(a) for a in g.advancing)
    return GrowthRate(rate, g.k < g.pattern.distinct)


class BirthBound(NamedTuple):
    value: Fraction
    in_regime: bool


def birth_bound(k: int, d: int, ell: int, n: int) -> BirthBound:
    """Pure-birth upper bound on the number of avoiders of length ``n``.

    ``(d-1)^n * sum_{i <= ell*C(k,d)} C(n,i) ((k-d+1)/(d-1))^i``; the flag
    says whether ``k > d`` and ``n > ell*C(k,d)``, where the bound is proven.
    """
    if d < 2:
        raise ValueError(f"birth bound needs d >= 2 (got d={d}); it divides by d-1")
    if n < 0:
        raise ValueError("length must be non-negative")
    top = ell * comb(k, d)
    ratio = Fraction(k - d + 1, d - 1)
    total = sum(comb(n, i) * ratio**i for i in range(top + 1))
    return BirthBound((d - 1) ** n * total, k > d and n > top)


@dataclass(frozen=True)
class SimulationResult:
    trials: int
    hits: int
    estimate: Fraction
    std_error: float
    seed: int

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "hits": self.hits,
            "estimate": [self.estimate.numerator, self.estimate.denominator],
            "estimate_float": float(self.estimate),
            "std_error": self.std_error,
            "seed": self.seed,
        }


def _simulate_chunk(table: np.ndarray, k: int, n: int, size: int, seed: int, chunk: int) -> int:
    # Philox is counter-based; keying on (seed, chunk) makes every chunk
    # reproducible regardless of which worker runs it.
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, chunk])))
    sink = table.shape[0] - 1
    pos = np.zeros(size, dtype=np.int64)
    for _ in range(n):
        letters = rng.integers(0, k, size=size)  # unbiased bounded draw
        pos = table[pos, letters]
    return int(np.count_nonzero(pos != sink))


def simulate(g: AutomatonGraph, n: int, trials: int, seed: int = 0, threads: int = 1) -> SimulationResult:
    """Monte Carlo estimate of the avoidance probability from ``trials`` walks."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if n < 0:
        raise ValueError("length must be non-negative")
    m = g.live_count
    table = np.array(
        [[m if t == SINK else t for t in row] for row in g.delta] + [[m] * g.k],
        dtype=np.int64,
    )
    sizes = [min(SIM_CHUNK, trials - start) for start in range(0, trials, SIM_CHUNK)]
    jobs = [(table, g.k, n, size, seed, c) for c, size in enumerate(sizes)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            hits = sum(pool.map(lambda a: _simulate_chunk(*a), jobs))
    else:
        hits = sum(_simulate_chunk(*a) for a in jobs)
    p = Fraction(hits, trials)
    std = math.sqrt(float(p) * (1 - float(p)) / trials)
    return SimulationResult(trials, hits, p, std, seed)
