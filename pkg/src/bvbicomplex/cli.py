"""Command-line driver: ``verify``, ``cohomology`` and ``random-property``.

Exit codes: 0 all checks pass, 1 a check failed, 2 bad input.  Reports are
JSON with a ``"schema": 1`` field, written to stdout or ``--out``.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Dict, List, Optional

from . import lie_cohomology as lc
from .bicomplex import homotopy_H, horizontal_d, projection_P
from .brackets import apply_X, soloviev
from .chern_simons import build_cs_context
from .graded_algebra import mul, partial_left, render
from .jet_calculus import field_degree_components, total_derivative
from .lie_algebra import ALGEBRA_DIR_ENV, InvalidLieAlgebra, load_algebra
from .random_elements import RandomConfig, random_element, random_tuple
from .suites import SCHEMA, SUITES, SuiteOptions, run_suite

DEFAULT_ALGEBRA_ENV = "BVBICOMPLEX_ALGEBRA"
PROPERTIES = ("jacobi", "leibniz", "homotopy")


class InputError(Exception):
    pass


def _load(name: Optional[str]):
    name = name or os.environ.get(DEFAULT_ALGEBRA_ENV) or "sl2"
    try:
        return load_algebra(name)
    except InvalidLieAlgebra as exc:
        raise InputError(str(exc)) from exc
    except FileNotFoundError as exc:
        raise InputError(str(exc)) from exc


def _emit(report: Dict, out: Optional[str]) -> None:
    text = json.dumps(report, indent=2, sort_keys=False, ensure_ascii=False) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# commands ---------------------------------------------------------------------

def cmd_verify(args) -> int:
    g = _load(args.algebra)
    if args.suite != "all" and args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES + ('all',))}")
    opts = SuiteOptions(seed=args.seed, trials=args.trials, alpha_trials=args.alpha_trials)
    reports = run_suite(args.suite, g, opts)
    ok = all(r.passed for r in reports)
    _emit({
        "schema": SCHEMA,
        "command": "verify",
        "algebra": g.name,
        "suite": args.suite,
        "pass": ok,
        "reports": [r.to_json(timing=args.timing) for r in reports],
    }, args.out)
    return 0 if ok else 1


def cmd_cohomology(args) -> int:
    g = _load(args.algebra)
    if args.max_degree is not None and args.max_degree < 0:
        raise InputError("--max-degree must be non-negative")
    report = lc.cohomology(g, args.max_degree)
    _emit({"schema": SCHEMA, "command": "cohomology", **report.to_json()}, args.out)
    return 0


def random_property(prop: str, algebra: str = "sl2", seed: int = 1, trials: int = 20,
                    max_jet_order: int = 1, max_field_degree: int = 2) -> Dict:
    """Run one randomized property; stops at the first counterexample."""
    g = _load(algebra)
    cs = build_cs_context(g, max_jet_order=max(2, max_jet_order + 1))
    ctx = cs.ctx
    rng = random.Random(seed)
    cfg = RandomConfig(max_jet_order=max_jet_order, min_degree=0 if prop == "homotopy" else 1,
                       max_degree=max_field_degree, form_degrees=(0, 1, 2), n_terms=4, pool=1)
    d = lambda x: horizontal_d(ctx, x)
    par = lambda x: x.degrees()[1]
    skipped: List[str] = []
    counterexample = None
    done = 0
    for t in range(trials):
        if prop == "jacobi":
            f, h, k = random_tuple(ctx, rng, cfg, 3)
            s = -1 if ((par(f) + 1) * (par(h) + 1)) & 1 else 1
            r = soloviev(ctx, f, soloviev(ctx, h, k)) - soloviev(ctx, soloviev(ctx, f, h), k) \
                - soloviev(ctx, h, soloviev(ctx, f, k)).scale(s)
            inputs = [f, h, k]
        elif prop == "leibniz":
            f, h, k = random_tuple(ctx, rng, cfg, 3)
            pf, ph = par(f), par(h)
            r = apply_X(ctx, f, mul(h, k)) - mul(apply_X(ctx, f, h), k) \
                - mul(h, apply_X(ctx, f, k)).scale(-1 if ((pf + 1) * ph) & 1 else 1)
            for i in range(1, ctx.n + 1):
                r = r + total_derivative(ctx, i, mul(h, k)) - mul(total_derivative(ctx, i, h), k) \
                    - mul(h, total_derivative(ctx, i, k))
            gens = sorted({x for m in h.terms for x in m if x.rank == 0})
            if gens:
                x = gens[0]
                r = r + partial_left(mul(h, k), x) - mul(partial_left(h, x), k) \
                    - mul(h, partial_left(k, x)).scale(-1 if (x.parity * ph) & 1 else 1)
            sd = -1 if (pf + 1) & 1 else 1
            r = r + d(soloviev(ctx, f, h)) - soloviev(ctx, d(f), h) - soloviev(ctx, f, d(h)).scale(sd)
            inputs = [f, h, k]
        elif prop == "homotopy":
            f = random_element(ctx, rng, cfg)
            comps = field_degree_components(f)
            if 0 in comps:
                if len(comps) == 1:
                    skipped.append(f"trial {t}: field degree 0 is outside the domain of H")
                    continue
                skipped.append(f"trial {t}: dropped the field-degree-0 part of the input")
                f = f - comps[0]
            inputs = [f]
            p = f.degrees()[2]
            if p == 0:
                r = d(homotopy_H(ctx, f)) + projection_P(ctx, f) - f
            else:
                r = d(homotopy_H(ctx, f)) + homotopy_H(ctx, d(f)) - f
        else:
            raise InputError(f"unknown property {prop!r}; choose from {', '.join(PROPERTIES)}")
        done += 1
        if r.terms:
            counterexample = {"trial": t, "inputs": [render(x) for x in inputs], "residual": render(r)}
            break
    return {
        "schema": SCHEMA,
        "command": "random-property",
        "property": prop,
        "algebra": g.name,
        "seed": seed,
        "trials": trials,
        "checked": done,
        "skipped": skipped,
        "pass": counterexample is None,
        "counterexample": counterexample,
    }


def cmd_random_property(args) -> int:
    if args.suite not in PROPERTIES:
        raise InputError(f"unknown property {args.suite!r}; choose from {', '.join(PROPERTIES)}")
    rep = random_property(args.suite, args.algebra, args.seed, args.trials,
                          args.max_jet_order, args.max_field_degree)
    _emit(rep, args.out)
    return 0 if rep["pass"] else 1


# argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bvbicomplex",
        description="Exact verification of BV bicomplex and Chern-Simons identities.",
        epilog=f"Algebra names: builtin names (optionally 'builtin:'-prefixed) or JSON files; "
               f"relative files are also looked up under ${ALGEBRA_DIR_ENV}.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--algebra", default=None)
    v.add_argument("--suite", default="all")
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--trials", type=int, default=10)
    v.add_argument("--alpha-trials", type=int, default=3)
    v.add_argument("--timing", action="store_true", help="include wall times (breaks byte-identical output)")
    v.add_argument("--out", default=None)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("cohomology", help="Chevalley-Eilenberg cohomology of an algebra")
    c.add_argument("--algebra", default=None)
    c.add_argument("--max-degree", type=int, default=None)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_cohomology)

    r = sub.add_parser("random-property", help="randomized property check")
    r.add_argument("--suite", required=True)
    r.add_argument("--algebra", default=None)
    r.add_argument("--seed", type=int, default=1)
    r.add_argument("--trials", type=int, default=20)
    r.add_argument("--max-jet-order", type=int, default=1)
    r.add_argument("--max-field-degree", type=int, default=2)
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_random_property)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
