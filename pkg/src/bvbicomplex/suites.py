"""Named verification suites, each a list of exact identity checks.

A suite runs against one Lie algebra and returns a ``VerificationReport``.
Checks are evaluated in the package conventions (see ``conventions``); the
comparisons with the explicitly expanded formulas go into ``notes`` so a
disagreement is visible without failing a suite whose identities all hold.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product as iproduct
from typing import Callable, Dict, List, Optional

from . import lie_cohomology as lc
from .bicomplex import (
    Functional, form_degree_part, homotopy_H, horizontal_d, integrate, projection_P,
)
from .brackets import (
    apply_X, bv_antibracket, homotopy_C, iota_cs, iota_generic, soloviev,
)
from .chern_simons import (
    R3, abelian_covariant_action, build_cs_context, compare_gamma_rho, cocycle_residual,
    cs3_nonabelian, cs_covariant_structure, d_i_generic, d_i_symmetric, embed_cochain,
    f_i_vector_fields, g_all, g_i, gamma, gamma_via_d_script, induced_bracket_check,
    nonabelian_action, nonabelian_covariant_action, pi, rho, s_u_display, sigma_f,
    verify_alpha_abelian,
)
from .graded_algebra import JET, GradedPolynomial, add_all, eta, mul, sigma_poly
from .jet_calculus import antifield_number, prolong, total_derivative
from .lie_algebra import LieAlgebraSpec
from .master_equation import (
    alpha_residual, check_covariant_master, check_master, gamma_op, generic_structure,
    lift_action, tilde_square,
)
from .random_elements import RandomConfig, random_element, random_tuple

SUITES = ("brackets", "poincare", "abelian-cs", "nonabelian-cs", "covariant", "alpha", "appendix")
SCHEMA = 1


@dataclass
class Check:
    name: str
    statement: str
    passed: bool
    residual_terms: int = 0
    seconds: float = 0.0

    def to_json(self, timing: bool) -> Dict:
        out = {"name": self.name, "statement": self.statement, "pass": self.passed,
               "residual_terms": self.residual_terms}
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class VerificationReport:
    suite: str
    algebra: str
    checks: List[Check] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self, timing: bool = False) -> Dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "algebra": self.algebra,
            "pass": self.passed,
            "checks": [c.to_json(timing) for c in sorted(self.checks, key=lambda c: c.name)],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class SuiteOptions:
    seed: int = 1
    trials: int = 10
    alpha_trials: int = 3


class _Runner:
    def __init__(self, report: VerificationReport):
        self.report = report

    def check(self, name: str, statement: str, fn: Callable[[], object]) -> bool:
        """``fn`` returns a residual (polynomial, count, or bool meaning 'ok')."""
        t = time.perf_counter()
        r = fn()
        if isinstance(r, bool):
            ok, n = r, 0 if r else 1
        elif isinstance(r, int):
            ok, n = r == 0, r
        else:
            n = len(r.terms)
            ok = n == 0
        self.report.checks.append(Check(name, statement, ok, n, time.perf_counter() - t))
        return ok

    def note(self, text: str) -> None:
        self.report.notes.append(text)


def _count(polys) -> int:
    return sum(len(p.terms) for p in polys)


def _sign(pf: int, pg: int) -> int:
    return -1 if ((pf + 1) * (pg + 1)) & 1 else 1


# individual suites -----------------------------------------------------------

def suite_brackets(g: LieAlgebraSpec, opts: SuiteOptions) -> VerificationReport:
    rep = VerificationReport("brackets", g.name)
    run = _Runner(rep)
    cs = build_cs_context(g, max_jet_order=2)
    ctx = cs.ctx
    rng = random.Random(opts.seed)
    cfg = RandomConfig(max_jet_order=1, max_degree=2, form_degrees=(0, 1, 2), n_terms=4, pool=1)
    triples = [tuple(random_tuple(ctx, rng, cfg, 3)) for _ in range(opts.trials)]
    par = lambda x: x.degrees()[1]

    def antisym():
        return _count(soloviev(ctx, f, h) + soloviev(ctx, h, f).scale(_sign(par(f), par(h)))
                      for f, h, _ in triples)

    def jacobi():
        out = []
        for f, h, k in triples:
            lhs = soloviev(ctx, f, soloviev(ctx, h, k))
            rhs = soloviev(ctx, soloviev(ctx, f, h), k) + \
                soloviev(ctx, h, soloviev(ctx, f, k)).scale(_sign(par(f), par(h)))
            out.append(lhs - rhs)
        return _count(out)

    def d_derivation():
        out = []
        for f, h, _ in triples:
            s = -1 if (par(f) + 1) & 1 else 1
            d = lambda x: horizontal_d(ctx, x)
            out.append(d(soloviev(ctx, f, h)) - soloviev(ctx, d(f), h) - soloviev(ctx, f, d(h)).scale(s))
        return _count(out)

    cfg0 = RandomConfig(max_jet_order=1, max_degree=2, n_terms=4, pool=1)
    pairs0 = [tuple(random_tuple(ctx, rng, cfg0, 2)) for _ in range(opts.trials)]

    def integral():
        bad = 0
        for f, h in pairs0:
            lhs = integrate(ctx, soloviev(ctx, f, h))
            rhs = bv_antibracket(ctx, Functional(ctx, f), Functional(ctx, h))
            bad += not (lhs == rhs)
        return bad

    def homotopy_lemma():
        out = []
        for (f, _), (_, h, _) in zip(pairs0, triples):
            sp = -1 if par(f) else 1
            d = lambda x: horizontal_d(ctx, x)
            lhs = d(homotopy_C(ctx, f, h))
            rhs = soloviev(ctx, f, h) - apply_X(ctx, f, h) + homotopy_C(ctx, d(f), h) + \
                homotopy_C(ctx, f, d(h)).scale(sp)
            out.append(lhs - rhs)
        return _count(out)

    def lemma_pair(iota, Dfun):
        out = []
        for f, _, _ in triples:
            for i in R3:
                out.append(horizontal_d(ctx, iota(ctx, i, f)) + iota(ctx, i, horizontal_d(ctx, f))
                           + soloviev(ctx, Dfun(cs, i), f))
        return _count(out)

    def x_d():
        out = []
        for slot in ctx.slots():
            for al in ctx.multi_indices(2):
                x = GradedPolynomial.gen(ctx.gen(slot, al))
                for i in R3:
                    out.append(apply_X(ctx, d_i_generic(cs, i), x) + total_derivative(ctx, i, x))
        return _count(out)

    def c_of_d():
        out = []
        for f, _, _ in triples:
            for i in R3:
                out.append(homotopy_C(ctx, d_i_generic(cs, i), f)
                           - mul(sigma_poly((i,)), antifield_number(ctx, f)))
        return _count(out)

    run.check("antisymmetry", "(f, g) = -(-1)^{(|f|+1)(|g|+1)} (g, f)", antisym)
    run.check("jacobi", "(f, (g, h)) = ((f, g), h) + (-1)^{(|f|+1)(|g|+1)} (g, (f, h))", jacobi)
    run.check("d-derivation", "d(f, g) = (df, g) + (-1)^{|f|+1} (f, dg)", d_derivation)
    run.check("integral", "∫(f, g) = (∫f, ∫g)", integral)
    run.check("homotopy-lemma", "dC(f,g) = (f,g) - X_f g + C(df,g) + (-1)^{|f|} C(f,dg), f sigma-free",
              homotopy_lemma)
    run.check("iota-generic", "d iota_i + iota_i d + ad(D_i) = 0, generic pair",
              lambda: lemma_pair(iota_generic, d_i_generic))
    run.check("iota-cs", "d iota_i + iota_i d + ad(D_i) = 0, iota_i = -1/2 sigma_i (E - 2)",
              lambda: lemma_pair(iota_cs, d_i_symmetric))
    run.check("x-of-d", "X_{D_i} = -d_i on jets of order <= 2", x_d)
    run.check("c-of-d", "C(D_i, f) = sigma_i N f", c_of_d)
    return rep


def suite_poincare(g: LieAlgebraSpec, opts: SuiteOptions) -> VerificationReport:
    rep = VerificationReport("poincare", g.name)
    run = _Runner(rep)
    cs = build_cs_context(g, max_jet_order=2)
    ctx = cs.ctx
    rng = random.Random(opts.seed)
    d = lambda x: horizontal_d(ctx, x)
    H = lambda x: homotopy_H(ctx, x)
    cfg = RandomConfig(max_jet_order=1, max_degree=2, form_degrees=(1, 2, 3), n_terms=2)
    fs = [random_element(ctx, rng, cfg) for _ in range(opts.trials)]
    cfg0 = RandomConfig(max_jet_order=1, max_degree=2, n_terms=2)
    f0s = [random_element(ctx, rng, cfg0) for _ in range(opts.trials)]
    run.check("d-squared", "d^2 = 0", lambda: _count(d(d(f)) for f in fs + f0s))
    run.check("dH+Hd", "(dH + Hd) f = f for form degree >= 1", lambda: _count(d(H(f)) + H(d(f)) - f for f in fs))
    run.check("dH+Pint", "(dH + P∫) f = f in form degree 0",
              lambda: _count(d(H(f)) + projection_P(ctx, f) - f for f in f0s))
    run.check("H-eta", "H(eta) = sigma_1 sigma_2 sigma_3",
              lambda: H(GradedPolynomial.gen(eta(3))) - sigma_poly((1, 2, 3)))
    return rep


def suite_abelian(g: LieAlgebraSpec, opts: SuiteOptions) -> VerificationReport:
    rep = VerificationReport("abelian-cs", g.name)
    run = _Runner(rep)
    cs = build_cs_context(g, max_jet_order=2)
    ctx = cs.ctx
    P, G = pi(cs), g_all(cs)
    run.check("pi-pi", "1/2 ∫(Pi, Pi) = 0", lambda: integrate(ctx, soloviev(ctx, P, P)).is_zero())
    run.check("pi-g", "(Pi, G_i) = -D_i", lambda: _count(soloviev(ctx, P, G[i - 1]) + d_i_symmetric(cs, i)
                                                        for i in R3))
    run.check("g-g", "(G_i, G_j) = 0", lambda: _count(soloviev(ctx, a, b) for a in G for b in G))
    run.check("iota-pi", "iota_i Pi = 0", lambda: _count(iota_cs(ctx, i, P) for i in R3))
    run.check("iota-g", "iota_i G_j = 0", lambda: _count(iota_cs(ctx, i, x) for i in R3 for x in G))
    run.check("d-closed", "dPi = dG_i = 0", lambda: _count(horizontal_d(ctx, x) for x in [P] + G))
    run.check("covariant-master", "d_u S_u + 1/2 (S_u, S_u) = D_u for S_u = Pi + u^i G_i",
              lambda: check_covariant_master(ctx, cs_covariant_structure(cs),
                                             abelian_covariant_action(cs)).passed)
    fields = f_i_vector_fields(cs)
    lo = [GradedPolynomial.gen(ctx.gen(s, a)) for s in ctx.slots() for a in ctx.multi_indices(1)]
    run.check("c-of-pi", "C(Pi, -) = -sigma_i f^i", lambda: _count(
        homotopy_C(ctx, P, x) + sigma_f(cs, x, fields) for x in lo))
    run.check("f-commute", "[pi, f^i] = [f^i, f^j] = 0 on jets of order <= 1", lambda: _count(
        _commutators(cs, fields, x) for x in lo))
    rng = random.Random(opts.seed)
    cfg = RandomConfig(max_jet_order=1, max_degree=2, form_degrees=(0, 1), n_terms=2)
    samples = [random_element(ctx, rng, cfg) for _ in range(opts.trials)]
    run.check("alpha-exp", "exp(sigma_i f^i)(d + X_Pi) = (d + ad Pi) exp(sigma_i f^i)",
              lambda: _count(verify_alpha_abelian(cs, f) for f in samples))
    return rep


def _commutators(cs, fields, x):
    ctx = cs.ctx
    P = pi(cs)
    out = []
    for v in fields:
        # pi and f^i are odd: graded commutators are anticommutators
        out.append(prolong(ctx, v, apply_X(ctx, P, x)) + apply_X(ctx, P, prolong(ctx, v, x)))
        for w in fields:
            out.append(prolong(ctx, v, prolong(ctx, w, x)) + prolong(ctx, w, prolong(ctx, v, x)))
    return add_all(out)


def suite_nonabelian(g: LieAlgebraSpec, opts: SuiteOptions) -> VerificationReport:
    rep = VerificationReport("nonabelian-cs", g.name)
    run = _Runner(rep)
    cs = build_cs_context(g, max_jet_order=2)
    ctx = cs.ctx
    cov = cs_covariant_structure(cs)
    r = rho(cs)
    gr = gamma(cs, r, cov)
    S = nonabelian_action(cs, cov)
    run.check("s-rho", "(Pi, rho) = 0", lambda: soloviev(ctx, pi(cs), r))
    run.check("rho-gamma-rho", "(rho, Gamma rho) = 0", lambda: soloviev(ctx, r, gr))
    run.check("gamma-d-script", "Gamma rho = -D(A_1)D(A_2)D(A_3) rho + D(A_i)D(A+^i) rho - D(c+) rho",
              lambda: gr - gamma_via_d_script(cs, r, cov.orientation))
    run.check("master", "dS + 1/2 (S, S) = 0 for S = Pi + Gamma rho", lambda: check_master(ctx, S).passed)
    run.check("covariant-master", "covariant master equation for Pi + Gamma rho + u^i G_i",
              lambda: check_covariant_master(ctx, cov, nonabelian_covariant_action(cs, cov)).passed)
    su = s_u_display(cs)
    run.check("action-display", "Pi + Gamma rho equals the expanded covariant action at u = 0",
              lambda: S - sum((su[k] for k in range(1, 4)), su[0]))
    run.check("sigma-free-part", "antifield-free, sigma-free part of S = cs3(A)",
              lambda: _antifield_free_mismatch(cs, S))
    # cocycles
    cocycles = []
    for k in range(0, min(g.dim, 3) + 1):
        rep_k = lc.cohomology(g, k).representatives.get(k, [])
        cocycles.extend((k, w) for w in rep_k)
    run.check("cocycles", "(d + ad S) Gamma f(c) = 0 for CE cocycles f of degree <= 3", lambda: _count(
        cocycle_residual(cs, embed_cochain(cs, w), S, cov) for _, w in cocycles))
    basis = [embed_cochain(cs, {k: Fraction(1)}) for d in (1, 2) for k in combinations(range(g.dim), d)]
    basis.append(r)
    run.check("poisson", "∫(Gamma f, g) = <df/dc, dg/dc>", lambda: sum(
        not induced_bracket_check(cs, f, h, cov).equal for f in basis for h in basis))
    cmp = compare_gamma_rho(cs, cov)
    for which, rels in cmp.table().items():
        run.note(f"Gamma rho versus {which.replace('_', ' ')} by form degree 0..3: " + ", ".join(rels))
    return rep


def _antifield_free_mismatch(cs, S) -> int:
    """Terms of the antifield-free sigma-free part of ``S`` not in ``cs3(A)``."""
    ctx = cs.ctx
    anti = {ctx.field_id("A+"), ctx.field_id("c+")}
    s0 = form_degree_part(S, 0)
    free = s0.filter(lambda m: not any(gen.rank == JET and gen.field in anti for gen in m))
    return len((free - cs3_nonabelian(cs)).terms)


def suite_covariant(g: LieAlgebraSpec, opts: SuiteOptions) -> VerificationReport:
    rep = VerificationReport("covariant", g.name)
    run = _Runner(rep)
    cs = build_cs_context(g, max_jet_order=2)
    ctx = cs.ctx
    cov = cs_covariant_structure(cs)
    S = nonabelian_action(cs, cov)
    G = g_all(cs)
    gen = generic_structure(ctx)
    rng = random.Random(opts.seed)
    cfg = RandomConfig(max_jet_order=1, max_degree=2, form_degrees=(0, 1), n_terms=2)
    fs = [random_element(ctx, rng, cfg) for _ in range(opts.trials)]
    Q = lambda x: horizontal_d(ctx, x) + soloviev(ctx, S, x)
    run.check("generic-lemma", "d iota_i + iota_i d + ad(D_i) = 0, D_i = <d_i x, xi>", lambda: _count(
        horizontal_d(ctx, gen.iota(i, f)) + gen.iota(i, horizontal_d(ctx, f)) + soloviev(ctx, gen.D[i - 1], f)
        for f in fs for i in R3))
    run.check("gamma-anticommute", "Gamma_i Gamma_j + Gamma_j Gamma_i = 0", lambda: _count(
        gamma_op(ctx, cov, G, i, gamma_op(ctx, cov, G, j, f)) + gamma_op(ctx, cov, G, j, gamma_op(ctx, cov, G, i, f))
        for f in fs for i in R3 for j in R3 if i <= j))
    run.check("gamma-commute-d-s", "[d + s, Gamma_i] = 0", lambda: _count(
        Q(gamma_op(ctx, cov, G, i, f)) + gamma_op(ctx, cov, G, i, Q(f)) for f in fs for i in R3))
    run.check("abelian-covariant", "covariant master equation for Pi + u^i G_i",
              lambda: check_covariant_master(ctx, cov, abelian_covariant_action(cs)).passed)
    run.check("nonabelian-covariant", "covariant master equation for Pi + Gamma rho + u^i G_i",
              lambda: check_covariant_master(ctx, cov, nonabelian_covariant_action(cs, cov)).passed)
    lit = check_covariant_master(ctx, cs_covariant_structure(cs, 1), abelian_covariant_action(cs))
    run.note("with d_u = d + u^i iota_i (orientation +1) the abelian covariant equation "
             + ("holds" if lit.passed else "fails: " + ", ".join(k for k, v in lit.components.items() if not v)))
    return rep


def suite_alpha(g: LieAlgebraSpec, opts: SuiteOptions) -> VerificationReport:
    rep = VerificationReport("alpha", g.name)
    run = _Runner(rep)
    cs = build_cs_context(g, max_jet_order=2)
    ctx = cs.ctx
    rng = random.Random(opts.seed)
    cfg = RandomConfig(max_jet_order=1, max_degree=2, form_degrees=(0, 1), n_terms=2)
    fs = [random_element(ctx, rng, cfg) for _ in range(opts.alpha_trials)]
    P = pi(cs)
    run.check("lift-pi", "lift of Pi solves dS + 1/2 (S, S) = 0",
              lambda: check_master(ctx, lift_action(ctx, P)).passed)
    run.check("alpha-pi", "(d + X_Pi) alpha = alpha (d + ad Pi)", lambda: _count(alpha_residual(ctx, P, f) for f in fs))
    if not g.is_abelian():
        S = nonabelian_action(cs)
        run.check("alpha-nonabelian", "(d + X_{S_0}) alpha = alpha (d + ad S), S = Pi + Gamma rho",
                  lambda: _count(alpha_residual(ctx, S, f) for f in fs))
        nz = sum(bool(tilde_square(ctx, S, f, full=True).terms) for f in fs)
        run.note(f"(d + X_S)^2 with the full X_S = sum_I X_(sigma_I S_I) is nonzero on {nz}/{len(fs)} samples")
    return rep


def suite_appendix(g: LieAlgebraSpec, opts: SuiteOptions) -> VerificationReport:
    rep = VerificationReport("appendix", g.name)
    run = _Runner(rep)
    ce = lc.CEComplex(g)
    coh = lc.cohomology(g)
    run.check("delta-squared", "delta^2 = 0", lambda: sum(
        bool(ce.differential(ce.differential({b: Fraction(1)}))) for k in range(g.dim + 1) for b in ce.basis(k)))
    run.check("euler", "sum (-1)^k b_k = 0", lambda: coh.euler_characteristic() == 0)
    rho_c = lc.rho_cochain(g)
    run.check("delta-rho", "delta rho = 0", lambda: not ce.differential(rho_c))
    run.check("delta-ad-rho", "delta = {rho, -}", lambda: sum(
        bool(lc.add(ce.differential({b: Fraction(1)}), lc.scale(lc.shifted_poisson(g, rho_c, {b: Fraction(1)}), -1)))
        for k in range(g.dim + 1) for b in ce.basis(k)))
    semisimple = not g.is_abelian() and coh.betti[1] == 0
    if semisimple:
        run.check("invariant-dims", "dim C^k(g)^g = b_k", lambda: coh.invariant_dims == coh.betti)
        run.check("whitehead", "b_1 = b_2 = 0", lambda: coh.betti[1] == 0 and coh.betti[2] == 0)
        inv = [w for k in range(g.dim + 1) for w in lc.invariant_cochains(g, k)]
        run.check("invariant-bracket", "{f, g} = 0 for invariant cochains", lambda: sum(
            bool(lc.shifted_poisson(g, a, b)) for a in inv for b in inv))
        Q = lc.quadratic_casimir(g)
        run.check("tau-q", "tau Q = rho", lambda: not lc.add(lc.tau(g, Q), lc.scale(rho_c, -1)))
        polys = [Q]
        for r in g.reps:
            for ell in (1, 2, 3):
                P = lc.trace_polynomial(g, r, ell)
                run.check(f"trace-{r.name}-{ell}-theta", f"P(Theta) = 0 for Tr_{r.name}(x^{ell})",
                          lambda P=P: not lc.evaluate_at_Theta(g, P))
                if P.coeffs:
                    t = lc.tau(g, P)
                    run.check(f"trace-{r.name}-{ell}-closed", "delta tau P = 0", lambda t=t: not ce.differential(t))
                    f = lc.scale(lc.trace_of_odd_power(g, r, 2 * ell - 1), Fraction(ell, 2 * ell - 1))
                    run.check(f"trace-{r.name}-{ell}-formula", "tau P = l/(2l-1) Tr(rho(theta)^(2l-1))",
                              lambda t=t, f=f: not lc.add(t, lc.scale(f, -1)))
                    if ell > 1:
                        polys.append(P)
        run.check("tau-products", "tau(PQ) = 0", lambda: sum(bool(lc.tau(g, a * b)) for a, b in
                                                            combinations(polys[:3], 2)))
        taus = [lc.tau(g, P) for P in polys]
        run.check("tau-brackets", "{tau P, tau Q} = 0", lambda: sum(
            bool(lc.shifted_poisson(g, a, b)) for a in taus for b in taus))
    run.note("Betti numbers " + str(coh.betti))
    return rep


RUNNERS = {
    "brackets": suite_brackets,
    "poincare": suite_poincare,
    "abelian-cs": suite_abelian,
    "nonabelian-cs": suite_nonabelian,
    "covariant": suite_covariant,
    "alpha": suite_alpha,
    "appendix": suite_appendix,
}


def run_suite(name: str, g: LieAlgebraSpec, opts: Optional[SuiteOptions] = None) -> List[VerificationReport]:
    opts = opts or SuiteOptions()
    if name == "all":
        return [RUNNERS[s](g, opts) for s in SUITES]
    if name not in RUNNERS:
        raise KeyError(name)
    return [RUNNERS[name](g, opts)]
