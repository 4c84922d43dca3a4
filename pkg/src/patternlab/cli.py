"""Command-line entry point: ``patternlab <command> [options]``."""
from __future__ import annotations

import argparse
import json
import sys

from .automaton import DEFAULT_STATE_LIMIT, StateLimitError, build_automaton, export_dot, to_json
from .cache import CacheCorruptionError, CountProvider, DiskCache
from .core import PatternError, as_pattern, format_word
from .enumeration import (DEFAULT_BUDGET, BudgetError, count_words, subseq_histogram,
                          to_csv, wilf_perms_compare, wilf_words_compare)
from .transfer import (avoidance_probability, count_avoiders, growth_rate, simulate,
                       transition_matrix)
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_CACHE = 4

FORMATS = {
    "count": ("json", "csv", "table"),
    "perm-count": ("json", "csv", "table"),
    "automaton": ("json", "dot", "table"),
    "growth": ("json", "table"),
    "simulate": ("json", "table"),
    "verify": ("json", "table"),
    "wilf": ("json", "table"),
    "histogram": ("json", "csv", "table"),
}


class UsageError(Exception):
    pass


def _patterns(args) -> list:
    raw = []
    if getattr(args, "pattern", None):
        raw.append(args.pattern)
    raw.extend(getattr(args, "patterns", None) or [])
    try:
        return [as_pattern(p) for p in raw]
    except PatternError as exc:
        raise UsageError(f"invalid pattern: {exc}") from exc


def _one_pattern(args):
    pats = _patterns(args)
    if len(pats) != 1:
        raise UsageError(f"{args.command} needs exactly one --pattern")
    return pats[0]


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} requires {', '.join(missing)}")


def _table(rows) -> str:
    width = max(len(str(key)) for key, _ in rows)
    return "\n".join(f"{str(key).ljust(width)}  {value}" for key, value in rows) + "\n"


def _emit(doc, fmt: str) -> str:
    if fmt == "table" and isinstance(doc, dict):
        return _table([(k, json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in doc.items()])
    return json.dumps(doc, indent=2) + "\n"


def _label(pats) -> str:
    return "+".join(str(p) for p in pats)


def cmd_count(args, provider) -> tuple[str, int]:
    _need(args, "k", "n")
    pats = _patterns(args)
    if not pats:
        raise UsageError("count needs --pattern or --patterns")
    if args.format == "csv" or args.r is not None:
        table = provider.words(pats, args.k, args.n)
        if args.format == "csv":
            return to_csv(table.csv_rows(), ("k", "n", "r", "count")), EXIT_OK
        r = args.r
        doc = {"pattern": _label(pats), "k": args.k, "n": args.n, "r": r, f"f{r}": str(table[r])}
        return _emit(doc, args.format), EXIT_OK
    if len(pats) == 1:
        g = build_automaton(pats[0], args.k, args.state_limit)
        f0 = count_avoiders(g, args.n)
        method = "transfer"
    else:
        f0 = count_words(pats, args.k, args.n, avoiders_only=True, budget=args.budget,
                         state_limit=args.state_limit)[0]
        method = "enumeration"
    doc = {"pattern": _label(pats), "k": args.k, "n": args.n, "method": method, "f0": str(f0)}
    return _emit(doc, args.format), EXIT_OK


def cmd_perm_count(args, provider) -> tuple[str, int]:
    _need(args, "n")
    pats = _patterns(args)
    if not pats:
        raise UsageError("perm-count needs --pattern or --patterns")
    table = provider.perms(pats, args.n)
    if args.format == "csv":
        return to_csv(table.csv_rows(), ("k", "n", "r", "count")), EXIT_OK
    r = args.r or 0
    doc = {"pattern": _label(pats), "n": args.n, "r": r, f"f{r}": str(table[r])}
    return _emit(doc, args.format), EXIT_OK


def cmd_automaton(args, provider) -> tuple[str, int]:
    _need(args, "k")
    g = build_automaton(_one_pattern(args), args.k, args.state_limit)
    if args.format == "dot":
        return export_dot(g, include_sink=args.include_sink), EXIT_OK
    doc = to_json(g)
    if args.matrix:
        doc["matrix"] = transition_matrix(g).to_json()
    if args.format == "table":
        rows = [(g.label(s), " ".join(map(str, sorted(g.advancing[s])))) for s in range(g.live_count)]
        return _table([("state", "advancing letters")] + rows), EXIT_OK
    return json.dumps(doc, indent=2) + "\n", EXIT_OK


def cmd_growth(args, provider) -> tuple[str, int]:
    _need(args, "k")
    v = _one_pattern(args)
    res = growth_rate(build_automaton(v, args.k, args.state_limit))
    doc = {"pattern": str(v), "k": args.k, "d": v.distinct, "rate": res.rate,
           "degenerate": res.degenerate}
    return _emit(doc, args.format), EXIT_OK


def cmd_simulate(args, provider) -> tuple[str, int]:
    _need(args, "k", "n")
    v = _one_pattern(args)
    g = build_automaton(v, args.k, args.state_limit)
    res = simulate(g, args.n, args.trials, args.seed, threads=args.threads)
    exact = avoidance_probability(g, args.n)
    doc = {"pattern": str(v), "k": args.k, "n": args.n, **res.to_json(),
           "exact": [exact.numerator, exact.denominator]}
    return _emit(doc, args.format), EXIT_OK


def cmd_verify(args, provider) -> tuple[str, int]:
    pats = _patterns(args)
    overrides = {
        "k": args.k, "n_max": args.n_max, "k_max": args.k_max, "l_max": args.l_max,
        "d_max": args.d_max, "order": args.order, "state_limit": args.state_limit,
        "patterns": [str(p) for p in pats] or None,
    }
    if args.suite in ("bounds", "all"):
        for p in pats:
            if p.distinct < 2:
                raise UsageError(f"pattern {p} has d={p.distinct} < 2; the bounds divide by d-1")
    reports = run_suite(args.suite, provider, **overrides)
    ok = all(r.ok for r in reports)
    if args.format == "table":
        text = _table([(r.identity, f"{'pass' if r.ok else 'FAIL'} ({r.checked} checks)") for r in reports])
    else:
        docs = [r.to_json() for r in reports]
        text = json.dumps(docs[0] if len(docs) == 1 else docs, indent=2) + "\n"
    return text, EXIT_OK if ok else EXIT_FAILED


def cmd_wilf(args, provider) -> tuple[str, int]:
    pats = _patterns(args)
    if len(pats) != 2:
        raise UsageError("wilf needs exactly two patterns (--patterns V1 V2)")
    _need(args, "n_max")
    if args.perms:
        verdict = wilf_perms_compare(pats[0], pats[1], args.n_max)
    else:
        _need(args, "k_max")
        verdict = wilf_words_compare(pats[0], pats[1], args.k_max, args.n_max,
                                     state_limit=args.state_limit, budget=args.budget)
    doc = {"patterns": [str(p) for p in pats], "domain": "perms" if args.perms else "words",
           **verdict.to_json()}
    return _emit(doc, args.format), EXIT_OK


def cmd_histogram(args, provider) -> tuple[str, int]:
    _need(args, "k", "n", "r")
    h = subseq_histogram(_one_pattern(args), args.k, args.n, args.r, budget=args.budget)
    if args.format == "csv":
        return to_csv(h.csv_rows(), ("k", "n", "r", "s", "count")), EXIT_OK
    return _emit(h.to_json(), args.format), EXIT_OK


COMMANDS = {
    "count": cmd_count,
    "perm-count": cmd_perm_count,
    "automaton": cmd_automaton,
    "growth": cmd_growth,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "wilf": cmd_wilf,
    "histogram": cmd_histogram,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pattern", help="pattern as digits (123) or comma list (1,10,2)")
    common.add_argument("--patterns", nargs="+", help="several patterns (a set, or two for wilf)")
    common.add_argument("--k", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--k-max", type=int)
    common.add_argument("--n-max", type=int)
    common.add_argument("--l-max", type=int)
    common.add_argument("--d-max", type=int)
    common.add_argument("--order", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100_000)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--state-limit", type=int, default=DEFAULT_STATE_LIMIT)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--format", default="json")
    common.add_argument("--out")
    common.add_argument("--cache-dir", help="defaults to $PATTERNLAB_CACHE")

    parser = argparse.ArgumentParser(prog="patternlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "verify":
            p.add_argument("suite", choices=SUITES + ("all",))
        if name == "automaton":
            p.add_argument("--include-sink", action="store_true")
            p.add_argument("--matrix", action="store_true", help="add the transition matrix")
        if name == "wilf":
            p.add_argument("--perms", action="store_true", help="compare over permutations")
    return parser


def _validate(args) -> None:
    if args.format not in FORMATS[args.command]:
        raise UsageError(f"format {args.format!r} not valid for {args.command}; "
                         f"choose from {', '.join(FORMATS[args.command])}")
    for name in ("budget", "state_limit", "threads", "trials"):
        if getattr(args, name) < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
    for name in ("k", "n", "r", "k_max", "n_max"):
        value = getattr(args, name)
        if value is not None and value < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be non-negative")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        provider = CountProvider(DiskCache.from_env(args.cache_dir), budget=args.budget,
                                 threads=args.threads)
        text, code = COMMANDS[args.command](args, provider)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetError, StateLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CacheCorruptionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CACHE
    except (ValueError, PatternError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
