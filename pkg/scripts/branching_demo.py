#!/usr/bin/env python3
"""Build the four-star pair, extract its bases, and run both branching
processes, printing the exact-rational reports as JSON."""

import argparse
import json
import sys

from crossfam.branching import (
    run_branching_cross,
    run_branching_t,
    smallest_branching_level,
)
from crossfam.constructions import four_star_pair, window_family
from crossfam.transversals import basis_pair, basis_t


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=8)
    parser.add_argument("--k", type=int, default=3)
    parser.add_argument("--t", type=int, default=1)
    args = parser.parse_args()

    a1, a2 = four_star_pair(args.n, args.k)
    b1, b2 = basis_pair(a1, a2)
    r = smallest_branching_level(b1)
    print(f"basis of the first side: {b1.sets()}", file=sys.stderr)
    print(f"basis of the second side: {b2.sets()}", file=sys.stderr)
    rep = run_branching_cross(b1, b2, k=args.k, r=r)
    print(json.dumps({"process": "cross", "r": r, **rep.to_json_dict()},
                     sort_keys=True))

    window = window_family(args.n, args.k, args.t)
    basis = basis_t(window, args.t)
    r_t = smallest_branching_level(basis, args.t)
    rep_t = run_branching_t(basis, t=args.t, k=args.k, r=r_t)
    print(json.dumps({"process": "t", "r": r_t, **rep_t.to_json_dict()},
                     sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
