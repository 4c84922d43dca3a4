"""Successive ratios f0(n+1)/f0(n); they approach d-1 slowly (polynomial correction)."""
import argparse

from patternlab.automaton import build_automaton
from patternlab.transfer import count_sequence


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pattern", default="123")
    parser.add_argument("--k", type=int, default=4)
    parser.add_argument("--n-max", type=int, default=500)
    args = parser.parse_args()
    seq = count_sequence(build_automaton(args.pattern, args.k), args.n_max + 1)
    n = 10
    while n <= args.n_max:
        print(f"{n:>6}  {seq[n + 1] / seq[n]:.6f}")
        n *= 2
    print(f"{args.n_max:>6}  {seq[args.n_max + 1] / seq[args.n_max]:.6f}")


if __name__ == "__main__":
    main()
