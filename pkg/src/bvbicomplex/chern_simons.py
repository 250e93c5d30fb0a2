"""Chern-Simons theory on R^3 over a Lie algebra with invariant inner product.

Fields: ghost ``c`` (gh 1, odd), connection ``A_i`` (gh 0, even), and their
antifields ``c+`` (gh -2, even), ``A+`` (gh -1, odd).  Antifield generators
carry a lower Lie index, so a Lie-valued antifield has upper components
``kappa^{ab} xi_b`` and ``<x, xi> = x^a xi_a``.  Lie-valued quantities are
lists of polynomials (upper components); ``<X, Y> = kappa_ab X^a Y^b`` and
``[X, Y]^c = f^c_ab X^a Y^b`` with the factors kept in the written order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product as iproduct
from typing import Callable, Dict, List, Optional, Sequence

from .bicomplex import Functional, form_degree_part, horizontal_d
from .brackets import apply_X, iota_cs, soloviev
from .graded_algebra import ZERO, GradedPolynomial, add_all, mul, sigma, sigma_poly
from .jet_calculus import EvolutionaryVectorField, JetContext, euler_vf, prolong, total_derivative
from .lie_algebra import LieAlgebraSpec
from . import conventions

Vec = List[GradedPolynomial]
N = 3
HALF = Fraction(1, 2)


def eps(*idx: int) -> int:
    """Levi-Civita symbol on 1-based indices, ``eps(1, 2, 3) = 1``."""
    if len(set(idx)) < len(idx):
        return 0
    sign = 1
    idx = list(idx)
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign


def epsilon_identity_holds() -> bool:
    """``sum_k delta^k_r eps^{pqr} eps_{ijk} = delta^p_i delta^q_j - delta^p_j delta^q_i``."""
    r3 = range(1, N + 1)
    for p, q, i, j in iproduct(r3, repeat=4):
        lhs = sum(eps(p, q, k) * eps(i, j, k) for k in r3)
        if lhs != int(p == i and q == j) - int(p == j and q == i):
            return False
    return True


@dataclass(frozen=True)
class CSContext:
    lie: LieAlgebraSpec
    ctx: JetContext

    @property
    def dim(self) -> int:
        return self.lie.dim


def build_cs_context(g: LieAlgebraSpec, max_jet_order: int = 2) -> CSContext:
    g.validate()
    ctx = JetContext.build(N, [("c", 1, 1, 0, g.dim), ("A", 0, 0, 1, g.dim)], max_jet_order, lie=g)
    return CSContext(g, ctx)


# Lie-valued building blocks ------------------------------------------------------

def vec(cs: CSContext, name: str, i: int = 0, alpha=None) -> Vec:
    """Upper Lie components of a field or antifield (``i`` is the spacetime index)."""
    ctx = cs.ctx
    comps = [ctx.var(name, a, i, alpha) for a in range(cs.dim)]
    if not ctx.descriptor(ctx.field_id(name)).is_antifield:
        return comps
    kinv = cs.lie.kappa_inv
    return [add_all(comps[b].scale(kinv[a][b]) for b in range(cs.dim) if kinv[a][b])
            for a in range(cs.dim)]


def dvec(cs: CSContext, i: int, X: Vec) -> Vec:
    return [total_derivative(cs.ctx, i, x) for x in X]


def pair(cs: CSContext, X: Vec, Y: Vec) -> GradedPolynomial:
    k = cs.lie.kappa
    return add_all(mul(X[a], Y[b]).scale(k[a][b]) for a in range(cs.dim) for b in range(cs.dim)
                   if k[a][b])


def bracket(cs: CSContext, X: Vec, Y: Vec) -> Vec:
    out: List[List[GradedPolynomial]] = [[] for _ in range(cs.dim)]
    for c, a, b, v in cs.lie.nonzero_f:
        out[c].append(mul(X[a], Y[b]).scale(v))
    return [add_all(t) for t in out]


def _c(cs):
    return vec(cs, "c")


def _A(cs, i, alpha=None):
    return vec(cs, "A", i, alpha)


def _Ap(cs, i, alpha=None):
    return vec(cs, "A+", i, alpha)


def _cp(cs, alpha=None):
    return vec(cs, "c+", 0, alpha)


R3 = range(1, N + 1)


# densities -------------------------------------------------------------------------

def pi(cs: CSContext) -> GradedPolynomial:
    """Abelian action ``1/2 eps^{ijk}<A_i, d_j A_k> + 1/2 <d_i c, A+^i> - 1/2 <c, d_i A+^i>``."""
    parts = []
    for i, j, k in permutations(R3):
        parts.append(pair(cs, _A(cs, i), dvec(cs, j, _A(cs, k))).scale(HALF * eps(i, j, k)))
    c = _c(cs)
    for i in R3:
        parts.append(pair(cs, dvec(cs, i, c), _Ap(cs, i)).scale(HALF))
        parts.append(pair(cs, c, dvec(cs, i, _Ap(cs, i))).scale(-HALF))
    return add_all(parts)


def g_i(cs: CSContext, i: int) -> GradedPolynomial:
    """``G_i = 1/2 eps_{ijk}<A+^j, A+^k> + <A_i, c+>``."""
    parts = [pair(cs, _Ap(cs, j), _Ap(cs, k)).scale(HALF * eps(i, j, k))
             for j, k in permutations(R3, 2) if eps(i, j, k)]
    parts.append(pair(cs, _A(cs, i), _cp(cs)))
    return add_all(parts)


def d_i_generic(cs: CSContext, i: int) -> GradedPolynomial:
    """``D_i = <d_i x^a, xi_a>`` summed over every field component."""
    ctx = cs.ctx
    e = tuple(int(k == i) for k in R3)
    parts = []
    for slot in ctx.slots(antifields=False):
        x = GradedPolynomial.gen(ctx.gen(slot, e))
        xi = GradedPolynomial.gen(ctx.gen(ctx.partner_slot(slot)))
        parts.append(mul(x, xi))
    return add_all(parts)


def d_i_symmetric(cs: CSContext, i: int) -> GradedPolynomial:
    """The version of ``D_i`` treating fields and antifields alike."""
    parts = []
    for j in R3:
        parts.append(pair(cs, dvec(cs, i, _A(cs, j)), _Ap(cs, j)).scale(HALF))
        parts.append(pair(cs, _A(cs, j), dvec(cs, i, _Ap(cs, j))).scale(-HALF))
    parts.append(pair(cs, dvec(cs, i, _c(cs)), _cp(cs)).scale(HALF))
    parts.append(pair(cs, _c(cs), dvec(cs, i, _cp(cs))).scale(-HALF))
    return add_all(parts)


def rho(cs: CSContext) -> GradedPolynomial:
    """``1/6 <c, [c, c]>``."""
    c = _c(cs)
    return pair(cs, c, bracket(cs, c, c)).scale(Fraction(1, 6))


def rho_with_form(cs: CSContext, form: Sequence[Sequence[Fraction]]) -> GradedPolynomial:
    """``1/6 B(c, [c, c])`` for an arbitrary bilinear form ``B``, possibly not invariant."""
    c = _c(cs)
    cc = bracket(cs, c, c)
    parts = [mul(c[a], cc[b]).scale(Fraction(form[a][b]) / 6)
             for a in range(cs.dim) for b in range(cs.dim) if form[a][b]]
    return add_all(parts)


def cs3_nonabelian(cs: CSContext) -> GradedPolynomial:
    """``eps^{ijk}(1/2 <A_i, d_j A_k> + 1/6 <A_i, [A_j, A_k]>)`` as a sigma-free density."""
    parts = []
    for i, j, k in permutations(R3):
        e = eps(i, j, k)
        parts.append(pair(cs, _A(cs, i), dvec(cs, j, _A(cs, k))).scale(HALF * e))
        parts.append(pair(cs, _A(cs, i), bracket(cs, _A(cs, j), _A(cs, k))).scale(Fraction(e, 6)))
    return add_all(parts)


# vector fields f^i and the abelian intertwiner ---------------------------------------

def _lower(cs: CSContext, X: Vec) -> Vec:
    """``kappa_ba X^a``: the lower components that an antifield slot should receive."""
    k = cs.lie.kappa
    return [add_all(X[a].scale(k[b][a]) for a in range(cs.dim) if k[b][a]) for b in range(cs.dim)]


def _field_map(cs: CSContext, name: str, i: int, X: Vec) -> Dict:
    """The vector field ``<X, d/dY>`` for the Lie-valued generator ``Y = name_i``."""
    ctx = cs.ctx
    fid = ctx.field_id(name)
    comps = _lower(cs, X) if ctx.descriptor(fid).is_antifield else X
    return {(fid, a, i): comps[a] for a in range(cs.dim)}


def f_i_vector_fields(cs: CSContext) -> List[EvolutionaryVectorField]:
    """``f^i = 1/2(-<c, d/dA_i> + eps^{ijk}<A_j, d/dA+^k> + <A+^i, d/dc+>)``."""
    out = []
    c = _c(cs)
    for i in R3:
        values: Dict = {}
        values.update(_field_map(cs, "A", i, [x.scale(-HALF) for x in c]))
        for k in R3:
            X = [add_all(_A(cs, j)[a].scale(HALF * eps(i, j, k)) for j in R3 if eps(i, j, k))
                 for a in range(cs.dim)]
            values.update(_field_map(cs, "A+", k, X))
        values.update(_field_map(cs, "c+", 0, [x.scale(HALF) for x in _Ap(cs, i)]))
        out.append(EvolutionaryVectorField.from_dict(values))
    return out


def sigma_f(cs: CSContext, g: GradedPolynomial, fields=None) -> GradedPolynomial:
    """``sigma_i f^i (g)``."""
    fields = fields or f_i_vector_fields(cs)
    return add_all(mul(GradedPolynomial.gen(sigma(i)), prolong(cs.ctx, fields[i - 1], g)) for i in R3)


def exp_sigma_f(cs: CSContext, g: GradedPolynomial, sign: int = 1) -> GradedPolynomial:
    """``exp(sign * sigma_i f^i) g``; the series stops after n + 1 terms."""
    fields = f_i_vector_fields(cs)
    out, term = g, g
    for k in range(1, N + 2):
        term = sigma_f(cs, term, fields).scale(Fraction(sign, k))
        if not term.terms:
            break
        out = out + term
    return out


def verify_alpha_abelian(cs: CSContext, g: GradedPolynomial) -> GradedPolynomial:
    """Residual of ``exp(sigma_i f^i)(d + pi~) = (d + pi) exp(sigma_i f^i)`` on ``g``.

    ``pi = ad(Pi)`` and ``pi~ = X_Pi``.
    """
    ctx = cs.ctx
    P = pi(cs)
    lhs = exp_sigma_f(cs, horizontal_d(ctx, g) + apply_X(ctx, P, g))
    eg = exp_sigma_f(cs, g)
    rhs = horizontal_d(ctx, eg) + soloviev(ctx, P, eg)
    return lhs - rhs


# the script-D operators -------------------------------------------------------------

def _c_to(cs: CSContext, X: Vec) -> EvolutionaryVectorField:
    """``pr<X, d/dc>``."""
    return EvolutionaryVectorField.from_dict(_field_map(cs, "c", 0, X))


def d_script_operators(cs: CSContext, orientation: int = 1
                       ) -> Dict[str, Callable[[GradedPolynomial], GradedPolynomial]]:
    """``D(A_i) = pr<A_i, d/dc> + orientation 1/2 sigma_i(E - 2)``, ``D(A+^i) = pr<A+^i, d/dc>``,
    ``D(c+) = pr<c+, d/dc>``.

    With ``orientation = 1`` this is the explicit expansion as usually written;
    in general the shift is ``-orientation iota_i``.
    """
    ctx = cs.ctx
    ops: Dict[str, Callable] = {}
    for i in R3:
        vA = _c_to(cs, _A(cs, i))
        vAp = _c_to(cs, _Ap(cs, i))

        def dA(g, vA=vA, i=i):
            shift = mul(GradedPolynomial.gen(sigma(i)), euler_vf(ctx, g) - g.scale(2))
            return prolong(ctx, vA, g) + shift.scale(HALF * orientation)

        ops[f"A{i}"] = dA
        ops[f"A+{i}"] = lambda g, v=vAp: prolong(ctx, v, g)
    vcp = _c_to(cs, _cp(cs))
    ops["c+"] = lambda g: prolong(ctx, vcp, g)
    return ops


def gamma_via_d_script(cs: CSContext, f: GradedPolynomial, orientation: int = 1) -> GradedPolynomial:
    """``-D(A_1)D(A_2)D(A_3)f + D(A_i)D(A+^i)f - D(c+)f`` for a cochain ``f(c)``."""
    ops = d_script_operators(cs, orientation)
    first = ops["A1"](ops["A2"](ops["A3"](f)))
    middle = add_all(ops[f"A{i}"](ops[f"A+{i}"](f)) for i in R3)
    return -first + middle - ops["c+"](f)


def gamma_rho_display(cs: CSContext) -> Dict[int, GradedPolynomial]:
    """The printed expansion of ``Gamma rho``, split by form degree (0..3).

    Kept as printed so that disagreements can be reported term by term.
    """
    c = _c(cs)
    cc = bracket(cs, c, c)
    s = lambda *I: sigma_poly(I)
    p0 = []
    for i, j, k in permutations(R3):
        p0.append(pair(cs, _A(cs, i), bracket(cs, _A(cs, j), _A(cs, k))).scale(Fraction(eps(i, j, k), 6)))
    p0.append(pair(cs, _cp(cs), cc).scale(-HALF))
    for i in R3:
        p0.append(-pair(cs, _Ap(cs, i), bracket(cs, _A(cs, i), c)))
    p1 = []
    for i in R3:
        inner = [pair(cs, _Ap(cs, i), cc)]
        for j, k in permutations(R3, 2):
            if eps(i, j, k):
                inner.append(pair(cs, bracket(cs, _A(cs, j), _A(cs, k)), c).scale(eps(i, j, k)))
        p1.append(mul(s(i), add_all(inner)).scale(Fraction(1, 4)))
    p2 = []
    for i, j, k in permutations(R3):
        p2.append(mul(s(i, j), pair(cs, _A(cs, k), cc)).scale(Fraction(-eps(i, j, k), 16)))
    p3 = []
    for i, j, k in permutations(R3):
        p3.append(mul(s(i, j, k), pair(cs, c, cc)).scale(Fraction(-eps(i, j, k), 288)))
    return {0: add_all(p0), 1: add_all(p1), 2: add_all(p2), 3: add_all(p3)}


def gamma_rho_explicit(cs: CSContext) -> GradedPolynomial:
    """The printed ``Gamma rho`` expansion as a single bi-form."""
    return add_all(gamma_rho_display(cs).values())


def s_u_display(cs: CSContext) -> Dict[int, GradedPolynomial]:
    """The printed u-independent covariant action ``S_u|_{u=0}``, split by form degree.

    The form-degree-0 part is ``cs3(A)`` plus the antifield terms of the
    ``Gamma rho`` display together with the abelian ghost terms of ``Pi``.
    """
    c = _c(cs)
    cc = bracket(cs, c, c)
    s = lambda *I: sigma_poly(I)
    gr0 = gamma_rho_display(cs)[0]
    p0 = pi(cs) + gr0
    p1 = []
    for k in R3:
        inner = [pair(cs, _Ap(cs, k), cc)]
        for i, j in permutations(R3, 2):
            if eps(i, j, k):
                inner.append(pair(cs, c, bracket(cs, _A(cs, i), _A(cs, j))).scale(eps(i, j, k)))
        p1.append(mul(s(k), add_all(inner)).scale(Fraction(-1, 4)))
    p2 = []
    for i, j, k in permutations(R3):
        p2.append(mul(s(j, k), pair(cs, _A(cs, i), cc)).scale(Fraction(-eps(i, j, k), 16)))
    p3 = []
    for i, j, k in permutations(R3):
        p3.append(mul(s(i, j, k), pair(cs, c, cc)).scale(Fraction(eps(i, j, k), 288)))
    return {0: p0, 1: add_all(p1), 2: add_all(p2), 3: add_all(p3)}


# CE embedding and the induced bracket ---------------------------------------------------

def embed_cochain(cs: CSContext, coeffs: Dict[tuple, Fraction]) -> GradedPolynomial:
    """Map a CE cochain ``sum coeff * theta^{a1}...theta^{ak}`` to ``f(c)``."""
    ctx = cs.ctx
    parts = []
    for idx, v in coeffs.items():
        p = GradedPolynomial.const(v)
        for a in idx:
            p = mul(p, ctx.var("c", a))
        parts.append(p)
    return add_all(parts)


def poisson_on_c(cs: CSContext, f: GradedPolynomial, g: GradedPolynomial) -> GradedPolynomial:
    """``<df/dc, dg/dc> = kappa^{ab} d_a f d_b g`` (left derivatives in ``c``)."""
    from .graded_algebra import partial_left
    ctx = cs.ctx
    kinv = cs.lie.kappa_inv
    parts = []
    for a, b in iproduct(range(cs.dim), repeat=2):
        if kinv[a][b]:
            da = partial_left(f, ctx.gen((ctx.field_id("c"), a, 0)))
            db = partial_left(g, ctx.gen((ctx.field_id("c"), b, 0)))
            parts.append(mul(da, db).scale(kinv[a][b]))
    return add_all(parts)


# the covariant theory ------------------------------------------------------------------

def cs_covariant_structure(cs: CSContext, orientation: Optional[int] = None):
    """``iota_i = -1/2 sigma_i (E - 2)`` paired with the symmetric ``D_i``.

    The default orientation is ``conventions.CS_U_ORIENTATION``; pass ``1`` for
    the literal ``d_u = d + u^i iota_i``.
    """
    from .master_equation import CovariantStructure
    ctx = cs.ctx
    o = conventions.CS_U_ORIENTATION if orientation is None else orientation
    return CovariantStructure(lambda i, f: iota_cs(ctx, i, f),
                              tuple(d_i_symmetric(cs, i) for i in R3), o)


def g_all(cs: CSContext) -> List[GradedPolynomial]:
    return [g_i(cs, i) for i in R3]


def abelian_covariant_action(cs: CSContext):
    """``Pi + u^i G_i``."""
    from .master_equation import UPolynomial
    return UPolynomial.affine(N, pi(cs), g_all(cs))


def gamma(cs: CSContext, f: GradedPolynomial, cov=None) -> GradedPolynomial:
    """``Gamma_1 Gamma_2 Gamma_3 f`` for the abelian theory ``Pi + u^i G_i``."""
    from .master_equation import gamma_all
    cov = cs_covariant_structure(cs) if cov is None else cov
    return gamma_all(cs.ctx, cov, g_all(cs), f)


def nonabelian_action(cs: CSContext, cov=None) -> GradedPolynomial:
    """``Pi + Gamma rho``: the u-independent part of the twisted covariant action."""
    return pi(cs) + gamma(cs, rho(cs), cov)


def nonabelian_covariant_action(cs: CSContext, cov=None):
    """``S_u = Pi + Gamma rho + u^i G_i`` through the certified twist."""
    from .master_equation import aksz_twist
    cov = cs_covariant_structure(cs) if cov is None else cov
    return aksz_twist(cs.ctx, cov, abelian_covariant_action(cs), rho(cs))


@dataclass
class GammaRhoComparison:
    """``Gamma rho`` against the two explicit expansions, by form degree."""

    computed: Dict[int, GradedPolynomial]
    gamma_display: Dict[int, GradedPolynomial]
    action_display: Dict[int, GradedPolynomial]
    d_script: Dict[int, GradedPolynomial]

    def relation(self, k: int, which: str) -> str:
        """'equal', 'opposite' or 'different' for ``computed[k]`` versus a display."""
        other = getattr(self, which)[k]
        a = self.computed[k]
        if not (a - other).terms:
            return "equal"
        if not (a + other).terms:
            return "opposite"
        return "different"

    def table(self) -> Dict[str, List[str]]:
        return {w: [self.relation(k, w) for k in range(N + 1)]
                for w in ("gamma_display", "action_display", "d_script")}


def compare_gamma_rho(cs: CSContext, cov=None) -> GammaRhoComparison:
    """Split ``Gamma rho`` by form degree and compare with the explicit expansions."""
    cov = cs_covariant_structure(cs) if cov is None else cov
    ctx = cs.ctx
    g = gamma(cs, rho(cs), cov)
    su = s_u_display(cs)
    su = {k: (v - pi(cs) if k == 0 else v) for k, v in su.items()}
    dd = gamma_via_d_script(cs, rho(cs), cov.orientation)
    split = lambda x: {k: form_degree_part(x, k) for k in range(N + 1)}
    return GammaRhoComparison(split(g), gamma_rho_display(cs), su, split(dd))


def bv_cocycle_from_ce(cs: CSContext, coeffs: Dict[tuple, Fraction], cov=None) -> GradedPolynomial:
    """``Gamma f(c)`` for a CE cochain; a ``(d + s)``-cocycle when ``f`` is a cocycle."""
    return gamma(cs, embed_cochain(cs, coeffs), cov)


def cocycle_residual(cs: CSContext, f: GradedPolynomial, S: GradedPolynomial, cov=None) -> GradedPolynomial:
    """``(d + ad S) Gamma f``."""
    gf = gamma(cs, f, cov)
    return horizontal_d(cs.ctx, gf) + soloviev(cs.ctx, S, gf)


@dataclass
class InducedBracket:
    lhs: GradedPolynomial  # ∫ (Gamma f, g)
    rhs: GradedPolynomial  # <df/dc, dg/dc>
    equal: bool


def induced_bracket_check(cs: CSContext, f: GradedPolynomial, g: GradedPolynomial,
                          cov=None) -> InducedBracket:
    """Project ``(Gamma f(c), g(c))`` with ``∫`` and compare with ``<df/dc, dg/dc>``."""
    ctx = cs.ctx
    lhs = form_degree_part(soloviev(ctx, gamma(cs, f, cov), g), 0)
    rhs = poisson_on_c(cs, f, g)
    return InducedBracket(lhs, rhs, Functional(ctx, lhs) == Functional(ctx, rhs))
