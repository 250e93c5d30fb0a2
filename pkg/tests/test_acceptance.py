"""Acceptance criteria 1-7.

Each criterion is computed by a ``criterion_N`` function returning an
``Outcome`` with its sub-checks.  Under pytest every criterion prints one
PASS/FAIL line (collected in the terminal summary); ``python3
tests/test_acceptance.py`` prints the same lines directly.

Three criteria are stated for formulas that do not hold as written in the
package's sign conventions (see README, "Known failures").  Their tests assert
the literal criterion and are marked ``xfail(strict=True)``: they are reported
as FAIL, and the marker turns into an error should they ever start passing.
"""

from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import List, Tuple

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from bvbicomplex import lie_cohomology as lc  # noqa: E402
from bvbicomplex.bicomplex import (  # noqa: E402
    Functional, homotopy_H, horizontal_d, integrate, projection_P,
)
from bvbicomplex.brackets import apply_X, bv_antibracket, iota_cs, soloviev  # noqa: E402
from bvbicomplex.chern_simons import (  # noqa: E402
    R3, abelian_covariant_action, build_cs_context, cocycle_residual, compare_gamma_rho,
    cs_covariant_structure, d_i_generic, d_i_symmetric, embed_cochain, g_all, gamma,
    gamma_via_d_script, induced_bracket_check, nonabelian_action, nonabelian_covariant_action,
    pi, rho, verify_alpha_abelian,
)
from bvbicomplex.graded_algebra import GradedPolynomial, eta, sigma_poly  # noqa: E402
from bvbicomplex.jet_calculus import total_derivative  # noqa: E402
from bvbicomplex.lie_algebra import load_algebra  # noqa: E402
from bvbicomplex.master_equation import (  # noqa: E402
    alpha_residual, check_covariant_master, check_master, gamma_op, lift_action,
)
from bvbicomplex.random_elements import RandomConfig, random_element, random_tuple  # noqa: E402

SEED = 20240611


@dataclass
class Outcome:
    number: int
    title: str
    parts: List[Tuple[str, bool]] = field(default_factory=list)
    info: List[str] = field(default_factory=list)
    seconds: float = 0.0

    def add(self, label: str, ok) -> bool:
        ok = bool(ok)
        self.parts.append((label, ok))
        return ok

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.parts)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        failed = [lab for lab, ok in self.parts if not ok]
        tail = f" (failed: {'; '.join(failed)})" if failed else ""
        return f"criterion {self.number} [{status}] {self.title} - {len(self.parts)} checks, {self.seconds:.1f}s{tail}"


def _zero(polys) -> bool:
    return all(not p.terms for p in polys)


def _sign(pf, pg):
    return -1 if ((pf + 1) * (pg + 1)) & 1 else 1


def _par(x):
    return x.degrees()[1]


# criteria -----------------------------------------------------------------------

def criterion_1() -> Outcome:
    out = Outcome(1, "bracket algebra: antisymmetry and Jacobi on sl2")
    cs = build_cs_context(load_algebra("sl2"), max_jet_order=2)
    ctx = cs.ctx
    rng = random.Random(SEED)
    cfg = RandomConfig(max_jet_order=1, min_degree=1, max_degree=2, form_degrees=(0, 1, 2), n_terms=4, pool=1)
    triples = [tuple(random_tuple(ctx, rng, cfg, 3)) for _ in range(50)]
    anti, jac = [], []
    for f, g, h in triples:
        s = _sign(_par(f), _par(g))
        anti.append(soloviev(ctx, f, g) + soloviev(ctx, g, f).scale(s))
        jac.append(soloviev(ctx, f, soloviev(ctx, g, h)) - soloviev(ctx, soloviev(ctx, f, g), h)
                   - soloviev(ctx, g, soloviev(ctx, f, h)).scale(s))
    out.add("graded antisymmetry on 50 triples", _zero(anti))
    out.add("graded Jacobi on 50 triples", _zero(jac))
    nested = sum(bool(soloviev(ctx, g, soloviev(ctx, f, h)).terms) for f, g, h in triples)
    out.info.append(f"{nested}/50 triples have a nonzero nested bracket (g, (f, h))")
    return out


def criterion_2() -> Outcome:
    out = Outcome(2, "Poincare homotopy")
    cs = build_cs_context(load_algebra("sl2"), max_jet_order=3)
    ctx = cs.ctx
    rng = random.Random(SEED + 2)
    d = lambda x: horizontal_d(ctx, x)
    H = lambda x: homotopy_H(ctx, x)
    cfg = RandomConfig(max_jet_order=2, min_degree=1, max_degree=2, form_degrees=(1, 2, 3), n_terms=2)
    fs = [random_element(ctx, rng, cfg) for _ in range(30)]
    cfg0 = RandomConfig(max_jet_order=2, min_degree=1, max_degree=2, n_terms=2)
    f0s = [random_element(ctx, rng, cfg0) for _ in range(30)]
    out.add("d^2 = 0", _zero(d(d(f)) for f in fs + f0s))
    out.add("(dH + Hd - 1) f = 0 on 30 elements of filtration >= 1",
            _zero(d(H(f)) + H(d(f)) - f for f in fs))
    out.add("(dH + P∫ - 1) f = 0 on 30 form-degree-0 densities",
            _zero(d(H(f)) + projection_P(ctx, integrate(ctx, f)) - f for f in f0s))
    out.add("H(eta) = sigma_1 sigma_2 sigma_3",
            not (H(GradedPolynomial.gen(eta(3))) - sigma_poly((1, 2, 3))).terms)
    return out


def criterion_3() -> Outcome:
    out = Outcome(3, "abelian Chern-Simons")
    for name in ("abelian1", "abelian3"):
        cs = build_cs_context(load_algebra(name), max_jet_order=2)
        ctx = cs.ctx
        P, G = pi(cs), g_all(cs)
        out.add(f"{name}: 1/2 ∫(Pi, Pi) = 0", integrate(ctx, soloviev(ctx, P, P)).is_zero())
        lit = [soloviev(ctx, P, G[i - 1]) - d_i_symmetric(cs, i) for i in R3]
        out.add(f"{name}: (Pi, G_i) = D_i", _zero(lit))
        if not _zero(lit):
            flipped = _zero(soloviev(ctx, P, G[i - 1]) + d_i_symmetric(cs, i) for i in R3)
            out.info.append(f"{name}: (Pi, G_i) = -D_i holds exactly: {flipped}")
        out.add(f"{name}: (G_i, G_j) = 0", _zero(soloviev(ctx, a, b) for a in G for b in G))
        out.add(f"{name}: iota_i Pi = iota_i G_j = 0",
                _zero(iota_cs(ctx, i, x) for i in R3 for x in [P] + G))
        out.add(f"{name}: dPi = dG_i = 0", _zero(horizontal_d(ctx, x) for x in [P] + G))
        cert = check_covariant_master(ctx, cs_covariant_structure(cs), abelian_covariant_action(cs))
        out.add(f"{name}: covariant master residual of Pi + u^i G_i is zero", cert.passed)
        xs = [GradedPolynomial.gen(ctx.gen(s, a)) for s in ctx.slots() for a in ctx.multi_indices(2)]
        out.add(f"{name}: X_(D_i) = -d_i on jets through order 2",
                _zero(apply_X(ctx, d_i_generic(cs, i), x) + total_derivative(ctx, i, x)
                      for x in xs for i in R3))
        rng = random.Random(SEED + 3)
        cfg = RandomConfig(max_jet_order=1, min_degree=1, max_degree=2, form_degrees=(0, 1), n_terms=2)
        samples = [random_element(ctx, rng, cfg) for _ in range(20)]
        out.add(f"{name}: exp(sigma_i f^i) intertwining residual on 20 elements",
                _zero(verify_alpha_abelian(cs, f) for f in samples))
    return out


def criterion_4() -> Outcome:
    out = Outcome(4, "non-abelian Chern-Simons")
    for name in ("sl2", "so3"):
        g = load_algebra(name)
        cs = build_cs_context(g, max_jet_order=2)
        ctx = cs.ctx
        cov = cs_covariant_structure(cs)
        r = rho(cs)
        gr = gamma(cs, r, cov)
        S = nonabelian_action(cs, cov)
        out.add(f"{name}: s(rho) = 0", not soloviev(ctx, pi(cs), r).terms)
        out.add(f"{name}: (rho, Gamma rho) = 0", not soloviev(ctx, r, gr).terms)
        literal = gamma_via_d_script(cs, r, 1)
        out.add(f"{name}: Gamma rho matches the explicit D-operator expansion", not (gr - literal).terms)
        if (gr - literal).terms:
            alt = gamma_via_d_script(cs, r, cov.orientation)
            out.info.append(f"{name}: with D(A_i) = pr<A_i, d/dc> - 1/2 sigma_i (E - 2) the expansion "
                            f"matches: {not (gr - alt).terms}")
        cert = check_covariant_master(ctx, cov, nonabelian_covariant_action(cs, cov))
        out.add(f"{name}: covariant master residual of Pi + Gamma rho + u^i G_i is zero", cert.passed)
        out.add(f"{name}: u = 0 part passes check_master", check_master(ctx, S).passed)
        coh = lc.cohomology(g, 3)
        cocycles = [w for k in range(4) for w in coh.representatives.get(k, [])]
        out.add(f"{name}: (d + s) Gamma f(c) = 0 for {len(cocycles)} CE cocycles of degree <= 3",
                _zero(cocycle_residual(cs, embed_cochain(cs, w), S, cov) for w in cocycles))
        basis = [embed_cochain(cs, {k: Fraction(1)}) for d in (1, 2) for k in combinations(range(g.dim), d)]
        basis.append(r)
        bad = sum(not induced_bracket_check(cs, f, h, cov).equal for f in basis for h in basis)
        out.add(f"{name}: ∫(Gamma f, g) = <df/dc, dg/dc> on {len(basis) ** 2} pairs", bad == 0)
        table = compare_gamma_rho(cs, cov).table()
        out.info.append(f"{name}: Gamma rho against the printed expansion by form degree 0..3: "
                        + ", ".join(table["gamma_display"]))
    return out


def criterion_5() -> Outcome:
    out = Outcome(5, "master-equation machinery")
    cs = build_cs_context(load_algebra("sl2"), max_jet_order=2)
    ctx = cs.ctx
    P = pi(cs)
    try:
        S = lift_action(ctx, P)
        out.add("lift_action(Pi) is certified", check_master(ctx, S).passed)
    except Exception as exc:  # a raised violation is a failed criterion, not a crash
        out.add(f"lift_action(Pi) is certified ({type(exc).__name__})", False)
    cov = cs_covariant_structure(cs)
    SN = nonabelian_action(cs, cov)
    rng = random.Random(SEED + 5)
    cfg = RandomConfig(max_jet_order=1, min_degree=1, max_degree=2, form_degrees=(0, 1), n_terms=2)
    fs = [random_element(ctx, rng, cfg) for _ in range(20)]
    out.add("alpha_intertwiner residual for Pi + Gamma rho on 20 elements",
            _zero(alpha_residual(ctx, SN, f) for f in fs))
    out.info.append("alpha intertwines d + X_(S_0) with d + ad S; with the full X_S = sum_I X_(sigma_I S_I) "
                    "(d + X_S)^2 is nonzero, so no intertwiner can exist for it")
    G = g_all(cs)
    Q = lambda x: horizontal_d(ctx, x) + soloviev(ctx, SN, x)
    gi = lambda i, x: gamma_op(ctx, cov, G, i, x)
    out.add("Gamma_i Gamma_j + Gamma_j Gamma_i = 0",
            _zero(gi(i, gi(j, f)) + gi(j, gi(i, f)) for f in fs[:10] for i in R3 for j in R3 if i <= j))
    out.add("[d + s, Gamma_i] = 0", _zero(Q(gi(i, f)) + gi(i, Q(f)) for f in fs[:10] for i in R3))
    return out


def criterion_6() -> Outcome:
    out = Outcome(6, "Chevalley-Eilenberg appendix")
    expected = {"sl2": [1, 0, 0, 1], "abelian3": [1, 3, 3, 1], "so3": [1, 0, 0, 1]}
    for name in ("sl2", "so3", "abelian3", "so3xso3"):
        g = load_algebra(name)
        ce = lc.CEComplex(g)
        coh = lc.cohomology(g)
        out.add(f"{name}: delta^2 = 0", all(
            not ce.differential(ce.differential({b: Fraction(1)})) for k in range(g.dim + 1) for b in ce.basis(k)))
        if name in expected:
            out.add(f"{name}: Betti numbers {expected[name]}", coh.betti == expected[name])
        if g.is_abelian():
            continue
        if name in ("sl2", "so3"):
            out.add(f"{name}: Whitehead b_1 = b_2 = 0", coh.betti[1] == 0 and coh.betti[2] == 0)
        out.add(f"{name}: dim C^k(g)^g = b_k", coh.invariant_dims == coh.betti)
        rho_c = lc.rho_cochain(g)
        Q = lc.quadratic_casimir(g)
        if name != "so3xso3":
            out.add(f"{name}: tau Q = rho", not lc.add(lc.tau(g, Q), lc.scale(rho_c, -1)))
        polys = [Q]
        theta_ok, closed_ok = True, True
        for rep in g.reps:
            for ell in (1, 2, 3):
                P = lc.trace_polynomial(g, rep, ell)
                theta_ok &= not lc.evaluate_at_Theta(g, P)
                if P.coeffs:
                    closed_ok &= not ce.differential(lc.tau(g, P))
                    if ell > 1:
                        polys.append(P)
        reps = ", ".join(r.name for r in g.reps)
        if g.reps:
            out.add(f"{name}: P_(V,l)(Theta) = 0, l = 1..3, reps {reps}", theta_ok)
            out.add(f"{name}: delta(tau P) = 0", closed_ok)
        out.add(f"{name}: tau(PQ) = 0", all(not lc.tau(g, a * b) for a, b in combinations(polys[:3], 2)))
        taus = [lc.tau(g, P) for P in polys]
        out.add(f"{name}: {{tau P, tau Q}} = 0", all(not lc.shifted_poisson(g, a, b) for a in taus for b in taus))
        inv = [w for k in range(g.dim + 1) for w in lc.invariant_cochains(g, k)]
        out.add(f"{name}: {{f, g}} = 0 on {len(inv) ** 2} invariant pairs",
                all(not lc.shifted_poisson(g, a, b) for a in inv for b in inv))
    return out


def _random_cochain(rng: random.Random, dim: int, k: int):
    keys = list(combinations(range(dim), k))
    pick = rng.sample(keys, min(len(keys), 2))
    return {key: Fraction(rng.choice((-3, -2, -1, 1, 2, 3))) for key in pick}


def criterion_7() -> Outcome:
    out = Outcome(7, "cross-module consistency")
    cs = build_cs_context(load_algebra("sl2"), max_jet_order=2)
    ctx = cs.ctx
    rng = random.Random(SEED + 7)
    cfg = RandomConfig(max_jet_order=1, min_degree=1, max_degree=2, n_terms=4, pool=1)
    pairs = [tuple(random_tuple(ctx, rng, cfg, 2)) for _ in range(30)]
    out.add("∫(f, g) = (∫f, ∫g) on 30 pairs", all(
        integrate(ctx, soloviev(ctx, f, h)) == bv_antibracket(ctx, Functional(ctx, f), Functional(ctx, h))
        for f, h in pairs))
    g = load_algebra("so3")
    cs = build_cs_context(g, max_jet_order=2)
    ctx = cs.ctx
    degs = [(3, 2), (2, 3), (1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (1, 3), (3, 3), (2, 2), (1, 1), (3, 2)]
    literal = signed = plain = 0
    for kf, kh in degs:
        f, h = _random_cochain(rng, g.dim, kf), _random_cochain(rng, g.dim, kh)
        res = induced_bracket_check(cs, embed_cochain(cs, f), embed_cochain(cs, h))
        bracket = embed_cochain(cs, lc.shifted_poisson(g, f, h))
        lhs = Functional(ctx, res.lhs)
        literal += lhs == Functional(ctx, bracket)
        signed += lhs == Functional(ctx, bracket.scale((-1) ** kf))
        plain += res.equal
    n = len(degs)
    out.add(f"shifted_poisson agrees with induced_bracket_check on {n} pairs", literal == n)
    out.info.append(f"so3: literal agreement {literal}/{n}; after the factor (-1)^deg f {signed}/{n}; "
                    f"induced bracket against <df/dc, dg/dc> {plain}/{n}")
    return out


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7}

KNOWN_FAILURES = {
    3: "(Pi, G_i) = -D_i with the stated G_i, iota_i and D_i",
    4: "the explicit D-operator expansion carries +1/2 sigma_i (E - 2); the structure needs -1/2",
    7: "the shifted Poisson bracket carries (-1)^deg f relative to <df/dc, dg/dc>",
}


def evaluate(n: int) -> Outcome:
    t = time.perf_counter()
    out = CRITERIA[n]()
    out.seconds = time.perf_counter() - t
    return out


def _run(n: int, acceptance_log) -> None:
    out = evaluate(n)
    acceptance_log(out)
    print(out.line())
    for lab, ok in out.parts:
        print(f"    [{'ok' if ok else 'FAIL'}] {lab}")
    assert out.passed, out.line()


def _marks(n):
    if n in KNOWN_FAILURES:
        return [pytest.mark.xfail(strict=True, reason=KNOWN_FAILURES[n])]
    return []


@pytest.mark.parametrize("n", [pytest.param(n, marks=_marks(n), id=f"criterion_{n}") for n in CRITERIA])
def test_criterion(n, acceptance_log):
    _run(n, acceptance_log)


if __name__ == "__main__":
    worst = 0
    for n in CRITERIA:
        o = evaluate(n)
        print(o.line(), flush=True)
        for line in o.info:
            print(f"    note: {line}")
        worst |= not o.passed
    sys.exit(worst)
