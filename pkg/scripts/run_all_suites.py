#!/usr/bin/env python3
"""Run every verification suite on a list of algebras and print a summary.

    python3 scripts/run_all_suites.py so3 sl2 --trials 5 --json reports.json
"""

import argparse
import json
import sys
import time

from bvbicomplex.lie_algebra import load_algebra
from bvbicomplex.suites import SuiteOptions, run_suite


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("algebras", nargs="*", default=["abelian1", "so3", "sl2"])
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--alpha-trials", type=int, default=2)
    ap.add_argument("--json", default=None, help="also dump the full reports here")
    args = ap.parse_args(argv)

    opts = SuiteOptions(args.seed, args.trials, args.alpha_trials)
    dump, ok = {}, True
    for name in args.algebras:
        g = load_algebra(name)
        t0 = time.perf_counter()
        reports = run_suite("all", g, opts)
        dt = time.perf_counter() - t0
        dump[g.name] = [r.to_json(timing=True) for r in reports]
        for r in reports:
            n = len(r.checks)
            bad = [c.name for c in r.failures()]
            ok &= not bad
            print(f"{g.name:10s} {r.suite:14s} {n - len(bad):3d}/{n:<3d} {'ok' if not bad else 'FAIL ' + ', '.join(bad)}")
        print(f"{g.name:10s} {'(total)':14s} {dt:.1f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(dump, fh, indent=2)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
