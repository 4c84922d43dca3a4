"""Exact avoider counts next to the (d-1)^n lower bound and the birth-process upper bound."""
import argparse

from patternlab.automaton import build_automaton
from patternlab.transfer import birth_bound, count_sequence


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pattern", default="123")
    parser.add_argument("--k", type=int, default=4)
    parser.add_argument("--n-max", type=int, default=40)
    args = parser.parse_args()
    g = build_automaton(args.pattern, args.k)
    d, ell = g.pattern.distinct, g.pattern.length
    seq = count_sequence(g, args.n_max)
    print("n,lower,f0,upper,in_regime")
    for n in range(1, args.n_max + 1):
        b = birth_bound(args.k, d, ell, n)
        print(f"{n},{(d - 1) ** n},{seq[n]},{float(b.value):.6g},{b.in_regime}")


if __name__ == "__main__":
    main()
