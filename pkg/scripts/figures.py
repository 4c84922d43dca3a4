"""Rebuild the k=4 automata for 123, 213 and 132 and write DOT files.

    python scripts/figures.py --out figures/
"""
import argparse
from pathlib import Path

from patternlab.automaton import build_automaton, export_dot, max_chain


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="figures")
    parser.add_argument("--k", type=int, default=4)
    parser.add_argument("--include-sink", action="store_true")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for v in ("123", "213", "132"):
        g = build_automaton(v, args.k)
        path = out / f"automaton_{v}_k{args.k}.dot"
        path.write_text(export_dot(g, include_sink=args.include_sink))
        print(f"{v}: {g.live_count} live states, longest chain {max_chain(g)} -> {path}")


if __name__ == "__main__":
    main()
