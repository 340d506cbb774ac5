#!/usr/bin/env python3
"""Compare the SMT verdict with exhaustive enumeration on random tiny problems.

    python scripts/oracle_sweep.py --seeds 200 --kmax 2

Seeds whose enumeration exceeds the budget are counted but not compared.
"""

import argparse
import collections
import sys
import time

from lcp.bounded import gen_problem
from lcp.encoder import EncodeOptions, encode
from lcp.solver import SolverConfig, check_smt
from lcp.tiny import tiny_instance
from lcp.validate import OracleConfig, brute_force_sat


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, default=100)
    ap.add_argument("--first", type=int, default=0)
    ap.add_argument("--kmax", type=int, default=2)
    ap.add_argument("--budget", type=int, default=10 ** 7)
    ap.add_argument("--no-symmetry", action="store_true")
    ap.add_argument("--no-pruning", action="store_true")
    ap.add_argument("--show", type=int, metavar="SEED", help="print the source of one instance and exit")
    args = ap.parse_args()

    if args.show is not None:
        inst = tiny_instance(args.show)
        print(f"// horizon {inst.horizon}\n{inst.source}", end="")
        return 0

    opts = dict(symmetry=not args.no_symmetry, pruning=not args.no_pruning)
    tally = collections.Counter()
    disagreements = []
    t0 = time.monotonic()
    for seed in range(args.first, args.first + args.seeds):
        inst = tiny_instance(seed)
        p = inst.problem
        cfg = OracleConfig(horizon=inst.horizon, max_assignments=args.budget)
        for k in range(args.kmax + 1):
            oracle = brute_force_sat(p, k, cfg)
            if oracle.status == "blown-budget":
                tally["blown-budget"] += 1
                continue
            model = check_smt(encode(gen_problem(p, k), EncodeOptions(horizon=inst.horizon, **opts)), SolverConfig())
            smt = "sat" if model is not None else "unsat"
            tally[(k, oracle.status)] += 1
            if smt != oracle.status:
                disagreements.append((seed, k, smt, oracle.status))
    elapsed = time.monotonic() - t0

    for key in sorted(tally, key=str):
        print(f"{key}: {tally[key]}")
    print(f"{sum(v for k, v in tally.items() if k != 'blown-budget')} comparisons, "
          f"{len(disagreements)} disagreements, {elapsed:.1f}s")
    for d in disagreements:
        print("  seed %d k=%d: smt %s, oracle %s" % d)
    return 1 if disagreements else 0


if __name__ == "__main__":
    sys.exit(main())
