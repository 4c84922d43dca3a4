"""Pattern occurrence in k-ary words: automata, exact counting and identities."""

__version__ = "0.1.0"

from .core import (Pattern, PatternError, canonicalize, is_order_isomorphic, occ,
                   occ_set, occurrence_subsequence, occurrences, parse_word)
from .automaton import (AutomatonGraph, StateLimitError, build_automaton,
                        detect_avoidance, export_dot, instances, max_chain)
from .transfer import (avoidance_probability, birth_bound, count_avoiders,
                       growth_rate, simulate, transition_matrix)

__all__ = [
    "Pattern", "PatternError", "canonicalize", "is_order_isomorphic", "occ",
    "occ_set", "occurrence_subsequence", "occurrences", "parse_word",
    "AutomatonGraph", "StateLimitError", "build_automaton", "detect_avoidance",
    "export_dot", "instances", "max_chain", "avoidance_probability",
    "birth_bound", "count_avoiders", "growth_rate", "simulate",
    "transition_matrix",
]
