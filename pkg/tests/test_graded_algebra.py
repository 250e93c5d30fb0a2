from fractions import Fraction

import pytest
from hypothesis import given

from bvbicomplex.graded_algebra import (
    ONE, ZERO, DegreeError, GradedPolynomial, eta, mul, partial_left, render, sigma, sigma_poly, u,
)
from strategies import element, scalar_ctx, seeds

ctx = scalar_ctx()
X = ctx.var("x")
Y = ctx.var("y")
Y1 = ctx.var("y", alpha=(1, 0))


def s(i):
    return GradedPolynomial.gen(sigma(i))


def test_odd_generators_anticommute_and_square_to_zero():
    assert mul(s(1), s(2)) == -mul(s(2), s(1))
    assert mul(s(1), s(1)) == ZERO
    assert mul(Y, Y) == ZERO
    assert mul(Y, Y1) == -mul(Y1, Y)


def test_even_generators_commute():
    uu = GradedPolynomial.gen(u(1))
    assert mul(X, uu) == mul(uu, X)
    assert mul(X, X) != ZERO


def test_sigma_against_odd_jet():
    assert mul(s(1), Y) == -mul(Y, s(1))
    assert mul(s(1), X) == mul(X, s(1))


def test_eta_parity_follows_dimension():
    assert eta(3).parity == 0 and eta(3).form == 4
    assert eta(2).parity == 1 and eta(2).form == 3


def test_sigma_poly_is_ordered_product():
    assert sigma_poly((2, 1)) == -sigma_poly((1, 2))
    assert sigma_poly((1, 1)) == ZERO


def test_degrees():
    p = mul(s(1), mul(Y, X))
    assert p.degrees() == (1, 0, 1)
    assert (X + ONE).degrees() == (0, 0, 0)
    with pytest.raises(DegreeError):
        (X + Y).degrees()
    with pytest.raises(DegreeError):
        ZERO.degrees()


def test_partial_left_signs():
    # d/dy (y1 y) = -y1 for odd y
    assert partial_left(mul(Y1, Y), Y.generators().pop()) == -Y1
    assert partial_left(mul(X, X), X.generators().pop()) == X.scale(2)


def test_rationals_are_exact():
    p = X.scale(Fraction(1, 3)) + X.scale(Fraction(2, 3))
    assert p == X
    assert (p - X).is_zero()


def test_render_is_canonical():
    p = mul(Y, s(2)).scale(Fraction(-1, 2)) + X
    assert render(p) == "x[a=0;α=(0,0)] + 1/2 * sig2 * y[a=0;α=(0,0)]"
    assert render(ZERO) == "0"


@given(seeds, seeds, seeds)
def test_mul_associative(a, b, c):
    f, g, h = (element(ctx, k, form_degrees=(0, 1)) for k in (a, b, c))
    assert mul(mul(f, g), h) == mul(f, mul(g, h))


@given(seeds, seeds)
def test_graded_commutative(a, b):
    f, g = (element(ctx, k, form_degrees=(0, 1, 2)) for k in (a, b))
    pf, pg = f.degrees()[1], g.degrees()[1]
    assert mul(f, g) == mul(g, f).scale((-1) ** (pf * pg))


@given(seeds, seeds, seeds)
def test_distributive(a, b, c):
    f, g, h = (element(ctx, k) for k in (a, b, c))
    assert mul(f, g + h) == mul(f, g) + mul(f, h)


@given(seeds, seeds)
def test_partial_left_is_graded_derivation(a, b):
    f, g = (element(ctx, k, form_degrees=(0, 1)) for k in (a, b))
    for x in (X, Y, Y1):
        gen = x.generators().pop()
        sign = (-1) ** (gen.parity * f.degrees()[1])
        lhs = partial_left(mul(f, g), gen)
        rhs = mul(partial_left(f, gen), g) + mul(f, partial_left(g, gen)).scale(sign)
        assert lhs == rhs
