#!/usr/bin/env python3
"""Encoding size per depth for one or more problems, with finite differences.

    python scripts/growth_table.py problems/rovers_like.anml --kmax 6
"""

import argparse

from lcp.anml import parse_file, with_extra_objects
from lcp.cli import encoding_stats
from lcp.encoder import EncodeOptions


def diffs(xs):
    return [b - a for a, b in zip(xs, xs[1:])]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("problems", nargs="+")
    ap.add_argument("--kmax", type=int, default=4)
    ap.add_argument("--objects", type=int, default=0, help="unused objects added to every object type")
    ap.add_argument("--no-pruning", action="store_true")
    args = ap.parse_args()

    for path in args.problems:
        p = parse_file(path)
        if args.objects:
            p = with_extra_objects(p, args.objects)
        rows = encoding_stats(p, args.kmax, EncodeOptions(pruning=not args.no_pruning))
        print(f"# {path} ({len(p.templates)} templates)")
        print(f"{'k':>3} {'vars':>7} {'asserts':>8} {'coher':>7} {'support':>8} {'consist':>8} {'symm':>6}")
        for r in rows:
            print(f"{r['k']:>3} {r['variables']:>7} {r['assertions']:>8} {r['coherence']:>7} "
                  f"{r['support']:>8} {r['consistency']:>8} {r['symmetry']:>6}")
        a = [r["assertions"] for r in rows]
        v = [r["variables"] for r in rows]
        print(f"assertions: 1st diff {diffs(a)}, 2nd diff {diffs(diffs(a))}")
        print(f"variables:  1st diff {diffs(v)}, 2nd diff {diffs(diffs(v))}")
        print()


if __name__ == "__main__":
    main()
