#!/usr/bin/env python3
"""Tabulate Betti numbers and invariant-cochain counts for the builtin algebras."""

import sys

from bvbicomplex import lie_cohomology as lc
from bvbicomplex.lie_algebra import BUILTINS, load_algebra


def main() -> int:
    rows = []
    for name in sorted(BUILTINS):
        g = load_algebra(name)
        rep = lc.cohomology(g)
        euler = sum((-1) ** k * b for k, b in enumerate(rep.betti))
        same = "yes" if rep.invariant_dims == rep.betti else "no"
        rows.append((name, g.dim, " ".join(map(str, rep.betti)), euler, same))
    print(f"{'algebra':10s} {'dim':>3s}  {'betti':20s} {'chi':>3s}  invariants=betti")
    for name, dim, betti, chi, same in rows:
        print(f"{name:10s} {dim:3d}  {betti:20s} {chi:3d}  {same}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
