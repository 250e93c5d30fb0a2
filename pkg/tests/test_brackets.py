from fractions import Fraction

from hypothesis import given

from bvbicomplex.bicomplex import Functional, horizontal_d, integrate
from bvbicomplex.brackets import (
    apply_X, bracket_report, bv_antibracket, hamiltonian_vf, homotopy_C, iota_cs, iota_generic, soloviev,
)
from bvbicomplex.chern_simons import R3, d_i_generic, d_i_symmetric, pi
from bvbicomplex.graded_algebra import ONE, ZERO, GradedPolynomial, mul, sigma_poly
from bvbicomplex.jet_calculus import antifield_number, prolong, total_derivative
from strategies import cs, element, elements, scalar_ctx, seeds

CS = cs("sl2")
ctx = CS.ctx
AB = cs("abelian1")


def par(x):
    return x.degrees()[1]


def sgn(pf, pg):
    return (-1) ** ((pf + 1) * (pg + 1))


def test_canonical_pairs():
    for field, anti, i in (("c", "c+", 0), ("A", "A+", 2)):
        x, xi = ctx.var(field, 1, i), ctx.var(anti, 1, i)
        assert soloviev(ctx, x, xi) == ONE
        assert soloviev(ctx, xi, x) == -ONE
        assert soloviev(ctx, x, ctx.var(anti, 0, i)) == ZERO


def test_brst_of_abelian_theory():
    c = AB.ctx
    P = pi(AB)
    dc = total_derivative(c, 1, c.var("c"))
    assert apply_X(c, P, c.var("A", 0, 1)) == -dc
    assert apply_X(c, P, c.var("c")) == ZERO
    # the density bracket differs from X_Pi by the total-derivative ambiguity of Pi
    assert soloviev(c, P, c.var("A", 0, 1)) == -dc.scale(Fraction(1, 2))


def test_bracket_report_ghost():
    r = bracket_report(ctx, ctx.var("c"), ctx.var("c+"))
    assert r.ghost == 0 and r.result == "1"


def test_hamiltonian_vf_matches_apply_X():
    f = pi(CS)
    v = hamiltonian_vf(ctx, f)
    x = ctx.var("A+", 2, 3, (1, 0, 0))
    assert prolong(ctx, v, x) == apply_X(ctx, f, x)


def test_x_of_d_i_is_minus_total_derivative():
    for slot in ctx.slots():
        for alpha in ctx.multi_indices(1):
            x = GradedPolynomial.gen(ctx.gen(slot, alpha))
            for i in R3:
                assert apply_X(ctx, d_i_generic(CS, i), x) == -total_derivative(ctx, i, x)


@given(seeds)
def test_c_of_d_i(a):
    f = element(ctx, a, form_degrees=(0, 1), max_jet_order=1)
    for i in R3:
        assert homotopy_C(ctx, d_i_generic(CS, i), f) == mul(sigma_poly((i,)), antifield_number(ctx, f))


@given(seeds)
def test_antisymmetry(a):
    f, g = elements(ctx, a, 2, form_degrees=(0, 1, 2), max_jet_order=1)
    assert soloviev(ctx, f, g) == -soloviev(ctx, g, f).scale(sgn(par(f), par(g)))


@given(seeds)
def test_jacobi(a):
    f, g, h = elements(ctx, a, 3, form_degrees=(0, 1, 2), max_jet_order=1)
    s = sgn(par(f), par(g))
    assert soloviev(ctx, f, soloviev(ctx, g, h)) == \
        soloviev(ctx, soloviev(ctx, f, g), h) + soloviev(ctx, g, soloviev(ctx, f, h)).scale(s)


@given(seeds)
def test_jacobi_scalar_context(a):
    sc = scalar_ctx()
    f, g, h = elements(sc, a, 3, form_degrees=(0, 1, 2), max_jet_order=1)
    s = sgn(par(f), par(g))
    assert soloviev(sc, f, soloviev(sc, g, h)) == \
        soloviev(sc, soloviev(sc, f, g), h) + soloviev(sc, g, soloviev(sc, f, h)).scale(s)


@given(seeds)
def test_d_is_a_derivation_of_the_bracket(a):
    f, g = elements(ctx, a, 2, form_degrees=(0, 1, 2), max_jet_order=1)
    d = lambda x: horizontal_d(ctx, x)
    assert d(soloviev(ctx, f, g)) == \
        soloviev(ctx, d(f), g) + soloviev(ctx, f, d(g)).scale((-1) ** (par(f) + 1))


@given(seeds)
def test_integral_matches_functional_bracket(a):
    f, g = elements(ctx, a, 2, max_jet_order=1)
    assert integrate(ctx, soloviev(ctx, f, g)) == bv_antibracket(ctx, Functional(ctx, f), Functional(ctx, g))


@given(seeds)
def test_homotopy_lemma_for_sigma_free_f(a):
    f = elements(ctx, a, 1, form_degrees=(0,), max_jet_order=1)[0]
    g = element(ctx, a + 1, form_degrees=(0, 1, 2), max_jet_order=1)
    d = lambda x: horizontal_d(ctx, x)
    lhs = d(homotopy_C(ctx, f, g))
    rhs = soloviev(ctx, f, g) - apply_X(ctx, f, g) + homotopy_C(ctx, d(f), g) + \
        homotopy_C(ctx, f, d(g)).scale((-1) ** par(f))
    assert lhs == rhs


@given(seeds)
def test_hamiltonian_vf_is_a_derivation(a):
    f, g, h = elements(ctx, a, 3, form_degrees=(0, 1), max_jet_order=1)
    pf, pg = par(f), par(g)
    assert apply_X(ctx, f, mul(g, h)) == \
        mul(apply_X(ctx, f, g), h) + mul(g, apply_X(ctx, f, h)).scale((-1) ** ((pf + 1) * pg))


@given(seeds)
def test_contraction_lemma(a):
    f = element(ctx, a, form_degrees=(0, 1, 2), max_jet_order=1)
    d = lambda x: horizontal_d(ctx, x)
    for i in R3:
        assert d(iota_generic(ctx, i, f)) + iota_generic(ctx, i, d(f)) + soloviev(ctx, d_i_generic(CS, i), f) == ZERO
        assert d(iota_cs(ctx, i, f)) + iota_cs(ctx, i, d(f)) + soloviev(ctx, d_i_symmetric(CS, i), f) == ZERO
