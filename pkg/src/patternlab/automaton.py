"""Instance sets, prefix state vectors and the avoidance-detection automaton.

A state assigns to every instance ``u`` (a word over ``[k]`` containing the
pattern exactly once) the prefix of ``u`` matched greedily so far. Reading a
letter extends exactly the coordinates whose next letter equals it. A word
contains the pattern iff some instance is matched completely; all such
states are merged into one absorbing sink.

Internally a state is the tuple of matched prefix *lengths*, which identifies
the prefix tuple exactly since each coordinate belongs to a fixed instance.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from .core import Pattern, Word, as_pattern, format_word

SINK = -1
DEFAULT_STATE_LIMIT = 10**6

State = tuple[int, ...]


class StateLimitError(RuntimeError):
    def __init__(self, limit: int):
        super().__init__(
            f"live state count exceeded state limit of {limit}; "
            "raise --state-limit or use brute-force enumeration"
        )
        self.limit = limit


@dataclass(frozen=True)
class InstanceSet:
    pattern: Pattern
    k: int
    instances: tuple[Word, ...]

    def __len__(self) -> int:
        return len(self.instances)

    def __iter__(self):
        return iter(self.instances)


def instances(v, k: int) -> InstanceSet:
    """Embeddings of ``v`` into every ``d``-subset of ``[k]``, sorted lexicographically."""
    v = as_pattern(v)
    if k < 1:
        raise ValueError(f"alphabet size must be >= 1, got {k}")
    words = []
    for subset in combinations(range(1, k + 1), v.distinct):
        words.append(tuple(subset[x - 1] for x in v.letters))
    return InstanceSet(v, k, tuple(sorted(words)))


def prefix_set(u: Sequence[int]) -> list[Word]:
    u = tuple(u)
    return [u[:i] for i in range(len(u) + 1)]


def extend(inst: InstanceSet, state: State, letter: int) -> State:
    """One step of the greedy prefix update on every coordinate."""
    if not 1 <= letter <= inst.k:
        raise ValueError(f"letter {letter} outside alphabet [1..{inst.k}]")
    ell = inst.pattern.length
    return tuple(
        p + 1 if p < ell and u[p] == letter else p
        for u, p in zip(inst.instances, state)
    )


def is_absorbing(inst: InstanceSet, state: State) -> bool:
    ell = inst.pattern.length
    return any(p == ell for p in state)


def advancing_letters(inst: InstanceSet, state: State) -> frozenset[int]:
    ell = inst.pattern.length
    return frozenset(u[p] for u, p in zip(inst.instances, state) if p < ell)


def state_prefixes(inst: InstanceSet, state: State) -> tuple[Word, ...]:
    return tuple(u[:p] for u, p in zip(inst.instances, state))


def format_state(inst: InstanceSet, state: State, epsilon: str = "e") -> str:
    parts = [format_word(pre) if pre else epsilon for pre in state_prefixes(inst, state)]
    return "(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class AutomatonGraph:
    """Reachable live states in topological order plus a collapsed sink.

    ``delta[s][i - 1]`` is the index of the state reached from live state
    ``s`` on letter ``i``, or ``SINK``.
    """

    inst: InstanceSet
    states: tuple[State, ...]
    delta: tuple[tuple[int, ...], ...]
    advancing: tuple[frozenset[int], ...]
    layer: tuple[int, ...]
    absorbed: frozenset[State] = field(repr=False)

    @property
    def pattern(self) -> Pattern:
        return self.inst.pattern

    @property
    def k(self) -> int:
        return self.inst.k

    @property
    def live_count(self) -> int:
        return len(self.states)

    @property
    def start(self) -> int:
        return 0

    @property
    def depth(self) -> int:
        return max_chain(self)

    def index(self, state: State) -> int:
        return self._index[state]

    def __post_init__(self):
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.states)})

    def step(self, s: int, letter: int) -> int:
        if s == SINK:
            return SINK
        if not 1 <= letter <= self.k:
            raise ValueError(f"letter {letter} outside alphabet [1..{self.k}]")
        return self.delta[s][letter - 1]

    def run(self, word: Sequence[int]) -> int:
        s = self.start
        for x in word:
            s = self.step(s, x)
        return s

    def advancing_edges(self):
        """Yield ``(source, letter, target)`` for letters that move the state."""
        for s, row in enumerate(self.delta):
            for i, t in enumerate(row, start=1):
                if t != s:
                    yield s, i, t

    def label(self, s: int, epsilon: str = "e") -> str:
        if s == SINK:
            return "sink"
        return format_state(self.inst, self.states[s], epsilon)


def build_automaton(v, k: int, state_limit: int = DEFAULT_STATE_LIMIT) -> AutomatonGraph:
    v = as_pattern(v)
    inst = instances(v, k)
    ell = v.length
    start: State = (0,) * len(inst)

    # letter -> coordinates whose instance could be waiting on that letter
    by_letter: dict[int, list[int]] = {i: [] for i in range(1, k + 1)}
    for c, u in enumerate(inst.instances):
        for x in set(u):
            by_letter[x].append(c)

    seen = {start}
    queue = deque([start])
    edges: dict[State, list[State | None]] = {}
    absorbed = set()
    while queue:
        state = queue.popleft()
        row: list[State | None] = []
        for i in range(1, k + 1):
            nxt = list(state)
            moved = False
            for c in by_letter[i]:
                p = state[c]
                if p < ell and inst.instances[c][p] == i:
                    nxt[c] = p + 1
                    moved = True
            if not moved:
                row.append(state)
                continue
            target = tuple(nxt)
            if any(p == ell for p in target):
                absorbed.add(target)
                row.append(None)
                continue
            row.append(target)
            if target not in seen:
                seen.add(target)
                if len(seen) > state_limit:
                    raise StateLimitError(state_limit)
                queue.append(target)
        edges[state] = row

    # longest-path layering from the start state gives a topological order
    layer = {start: 0}
    indeg = {s: 0 for s in edges}
    for s, row in edges.items():
        for t in set(row):
            if t is not None and t != s:
                indeg[t] += 1
    ready = [start]
    order = []
    while ready:
        s = ready.pop()
        order.append(s)
        for t in set(edges[s]):
            if t is None or t == s:
                continue
            layer[t] = max(layer.get(t, 0), layer[s] + 1)
            indeg[t] -= 1
            if indeg[t] == 0:
                ready.append(t)
    if len(order) != len(edges):
        raise AssertionError("advancing transitions contain a cycle")

    ordered = sorted(edges, key=lambda s: (layer[s], state_prefixes(inst, s)))
    index = {s: n for n, s in enumerate(ordered)}
    delta = tuple(
        tuple(SINK if t is None else index[t] for t in edges[s]) for s in ordered
    )
    advancing = tuple(advancing_letters(inst, s) for s in ordered)
    return AutomatonGraph(
        inst=inst,
        states=tuple(ordered),
        delta=delta,
        advancing=advancing,
        layer=tuple(layer[s] for s in ordered),
        absorbed=frozenset(absorbed),
    )


def max_chain(g: AutomatonGraph) -> int:
    """Number of states on the longest advancing chain of live states."""
    return max(g.layer) + 1


def detect_avoidance(g: AutomatonGraph, word: Sequence[int]) -> bool:
    """True iff ``word`` avoids the pattern (the final state is live)."""
    s = g.start
    for x in word:
        if not 1 <= x <= g.k:
            raise ValueError(f"letter {x} outside alphabet [1..{g.k}]")
        if s != SINK and x in g.advancing[s]:
            s = g.delta[s][x - 1]
    return s != SINK


def export_dot(g: AutomatonGraph, include_sink: bool = False, epsilon: str = "e") -> str:
    """Hasse diagram of the live states as a DOT digraph."""
    lines = [
        f'digraph "V_{g.k}({g.pattern})" {{',
        "  rankdir=LR;",
        "  node [shape=box];",
    ]
    for s in range(g.live_count):
        lines.append(f'  q{s} [label="{g.label(s, epsilon)}"];')
    if include_sink:
        lines.append('  sink [label="sink", shape=doublecircle];')
    for s, row in enumerate(g.delta):
        targets: dict[int, list[int]] = {}
        for i, t in enumerate(row, start=1):
            if t != s:
                targets.setdefault(t, []).append(i)
        for t, letters in sorted(targets.items()):
            if t == SINK and not include_sink:
                continue
            dst = "sink" if t == SINK else f"q{t}"
            lines.append(f'  q{s} -> {dst} [label="{",".join(map(str, letters))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: AutomatonGraph) -> dict:
    states = [[format_word(p) for p in state_prefixes(g.inst, s)] for s in g.states]
    transitions = []
    for s, row in enumerate(g.delta):
        for i, t in enumerate(row, start=1):
            transitions.append({"state": s, "letter": i, "next": "sink" if t == SINK else t})
    return {
        "pattern": str(g.pattern),
        "k": g.k,
        "instances": [format_word(u) for u in g.inst.instances],
        "states": states,
        "transitions": transitions,
        "live_count": g.live_count,
        "depth": max_chain(g),
    }


def dumps(g: AutomatonGraph) -> str:
    return json.dumps(to_json(g), indent=2)


def lemma_bounds(g: AutomatonGraph) -> tuple[int, int]:
    """Smallest advancing-set size and the depth bound ``C(k, d) * len(v)``."""
    return min(len(a) for a in g.advancing), comb(g.k, g.pattern.distinct) * g.pattern.length
