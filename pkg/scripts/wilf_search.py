"""Compare every pair of length-4 permutation patterns on words and on permutations.

Reports pairs equal over permutations up to --perm-n that split on some word grid cell.
"""
import argparse
from itertools import combinations

from patternlab.core import canonical_patterns
from patternlab.enumeration import wilf_perms_compare, wilf_words_compare


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--perm-n", type=int, default=8)
    parser.add_argument("--k-max", type=int, default=5)
    parser.add_argument("--n-max", type=int, default=7)
    args = parser.parse_args()
    perms = [v for v in canonical_patterns(4) if v.distinct == 4]
    for a, b in combinations(perms, 2):
        p = wilf_perms_compare(a, b, args.perm_n)
        if not p.equal:
            continue
        w = wilf_words_compare(a, b, args.k_max, args.n_max)
        tag = "words equal" if w.equal else f"words split at {w.witness}"
        print(f"{a} ~ {b} on permutations; {tag}")


if __name__ == "__main__":
    main()
