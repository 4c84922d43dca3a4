"""End-to-end verification suites producing JSON-ready reports."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .automaton import StateLimitError, build_automaton, max_chain
from .cache import CountProvider
from .core import as_pattern, canonical_patterns
from .identities import (binomial_identity_check, burstein_closed_form, catalan,
                         egf_identity_check, perms_from_words, sdisc_check,
                         weak_words_closed_form)
from .transfer import birth_bound, count_sequence, growth_rate

SUITES = ("bounds", "lemmas", "theorem2", "closed-forms", "egf", "sdisc")


@dataclass
class Report:
    identity: str
    grid: dict
    failures: list = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cell, lhs, rhs, holds: bool) -> None:
        self.checked += 1
        if not holds:
            self.failures.append({"cell": cell, "lhs": str(lhs), "rhs": str(rhs)})

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "grid": self.grid,
            "status": "pass" if self.ok else "fail",
            "checked": self.checked,
            "failures": self.failures,
        }


def verify_bounds(patterns=("123", "132", "213", "231", "312", "321"), k: int = 4,
                  n_max: int = 40) -> Report:
    """Lower and pure-birth upper bounds on avoider counts, in the proven regime."""
    patterns = [as_pattern(p) for p in patterns]
    for v in patterns:
        if v.distinct < 2:
            raise ValueError(f"pattern {v} has d={v.distinct}; the bounds need d >= 2")
    report = Report("bounds", {"patterns": [str(v) for v in patterns], "k": k, "n_max": n_max})
    for v in patterns:
        d, ell = v.distinct, v.length
        if k <= d:
            continue
        counts = count_sequence(build_automaton(v, k), n_max)
        for n in range(ell * comb(k, d) + 1, n_max + 1):
            f0 = counts[n]
            upper = birth_bound(k, d, ell, n).value
            report.check({"pattern": str(v), "k": k, "n": n, "side": "lower"},
                         (d - 1) ** n, f0, (d - 1) ** n <= f0)
            report.check({"pattern": str(v), "k": k, "n": n, "side": "upper"},
                         f0, upper, f0 <= upper)
    return report


def verify_lemmas(l_max: int = 4, d_max: int = 4, k_max: int = 5,
                  state_limit: int = 10**6) -> Report:
    """Advancing-set size, depth bound and exact growth rate for every automaton."""
    report = Report("lemmas", {"l_max": l_max, "d_max": d_max, "k_max": k_max})
    for ell in range(2, l_max + 1):
        for v in canonical_patterns(ell, d_max):
            d = v.distinct
            for k in range(1, k_max + 1):
                cell = {"pattern": str(v), "k": k}
                try:
                    g = build_automaton(v, k, state_limit)
                except StateLimitError:
                    report.grid.setdefault("skipped", []).append(cell)
                    continue
                smallest = min(len(a) for a in g.advancing)
                report.check({**cell, "claim": "advancing"}, smallest, k - d + 1, smallest >= k - d + 1)
                if k >= d:
                    # for k < d there are no instances and the bound reads 0
                    h, bound = max_chain(g), comb(k, d) * ell
                    report.check({**cell, "claim": "depth"}, h, bound, h <= bound)
                    rate = growth_rate(g).rate
                    report.check({**cell, "claim": "growth"}, rate, d - 1, rate == d - 1)
    return report


def verify_theorem2(l_max: int = 3, n_max: int = 7, rs=(0, 1, 2),
                    provider: CountProvider | None = None) -> Report:
    """Permutation counts recovered from word counts by the alternating sum."""
    provider = provider or CountProvider()
    targets = [str(v) for ell in range(2, l_max + 1) for v in canonical_patterns(ell)]
    targets.append(("12", "21"))
    report = Report("theorem2", {"l_max": l_max, "n_max": n_max, "r": list(rs), "sets": [["12", "21"]]})
    for target in targets:
        for r in rs:
            for n in range(1, n_max + 1):
                lhs = perms_from_words(target, r, n, provider)
                rhs = provider.perms(target, n)[r]
                label = target if isinstance(target, str) else "+".join(target)
                report.check({"pattern": label, "r": r, "n": n}, lhs, rhs, lhs == rhs)
    return report


def verify_egf(patterns=("12", "123"), rs=(0, 1), order: int = 6,
               provider: CountProvider | None = None) -> Report:
    provider = provider or CountProvider()
    report = Report("egf", {"patterns": list(patterns), "r": list(rs), "order": order})
    for v in patterns:
        for r in rs:
            res = egf_identity_check(v, r, order, provider)
            for n in range(1, order + 1):
                report.check({"pattern": v, "r": r, "coefficient": n},
                             res.lhs[n], res.rhs[n], res.lhs[n] == res.rhs[n])
    return report


def verify_closed_forms(k_max: int = 4, n_max: int = 8, perm_n_max: int = 9,
                        binomial_n_max: int = 25,
                        provider: CountProvider | None = None) -> Report:
    provider = provider or CountProvider()
    report = Report("closed-forms", {"k_max": k_max, "n_max": n_max,
                                     "perm_n_max": perm_n_max, "binomial_n_max": binomial_n_max})
    for k in range(1, k_max + 1):
        seqs = {v: count_sequence(build_automaton(v, k), n_max) for v in ("123", "132", "12")}
        for n in range(1, n_max + 1):
            closed = burstein_closed_form(k, n)
            for v in ("123", "132"):
                brute = provider.words(v, k, n)[0]
                cell = {"form": "burstein", "pattern": v, "k": k, "n": n}
                report.check({**cell, "side": "brute"}, closed, brute, closed == brute)
                report.check({**cell, "side": "transfer"}, closed, seqs[v][n], closed == seqs[v][n])
            weak = weak_words_closed_form(k, n)
            brute = provider.words("12", k, n)[0]
            report.check({"form": "weak", "k": k, "n": n}, weak, brute, weak == brute)
    for n in range(0, perm_n_max + 1):
        for v in ("123", "132"):
            brute = provider.perms(v, n)[0]
            report.check({"form": "catalan", "pattern": v, "n": n}, catalan(n), brute, catalan(n) == brute)
    for n in range(1, binomial_n_max + 1):
        report.check({"form": "binomial", "n": n}, "sum", 1, binomial_identity_check(n))
    return report


def verify_sdisc(patterns=("12", "123", "132"), n_max: int = 7,
                 provider: CountProvider | None = None) -> Report:
    provider = provider or CountProvider()
    report = Report("sdisc", {"patterns": list(patterns), "n_max": n_max})
    for v in patterns:
        for n in range(1, n_max + 1):
            res = sdisc_check(v, n, provider)
            report.check({"pattern": v, "n": n}, res.lhs, res.rhs, res.ok)
    return report


def ratio_diagnostic(v="123", k: int = 4, n: int = 500) -> Fraction:
    """Exact ratio ``f_0(n+1) / f_0(n)``."""
    seq = count_sequence(build_automaton(v, k), n + 1)
    return Fraction(seq[n + 1], seq[n])


def run_suite(name: str, provider: CountProvider | None = None, **overrides) -> list[Report]:
    provider = provider or CountProvider()
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, provider, **overrides)]
    if name == "bounds":
        kw = {key: overrides[key] for key in ("patterns", "k", "n_max") if overrides.get(key) is not None}
        return [verify_bounds(**kw)]
    if name == "lemmas":
        kw = {key: overrides[key] for key in ("l_max", "d_max", "k_max", "state_limit")
              if overrides.get(key) is not None}
        return [verify_lemmas(**kw)]
    if name == "theorem2":
        kw = {key: overrides[key] for key in ("l_max", "n_max") if overrides.get(key) is not None}
        return [verify_theorem2(provider=provider, **kw)]
    if name == "egf":
        kw = {key: overrides[key] for key in ("patterns", "order") if overrides.get(key) is not None}
        return [verify_egf(provider=provider, **kw)]
    if name == "closed-forms":
        kw = {key: overrides[key] for key in ("k_max", "n_max") if overrides.get(key) is not None}
        return [verify_closed_forms(provider=provider, **kw)]
    if name == "sdisc":
        kw = {key: overrides[key] for key in ("patterns", "n_max") if overrides.get(key) is not None}
        return [verify_sdisc(provider=provider, **kw)]
    raise ValueError(f"unknown suite {name!r}")
