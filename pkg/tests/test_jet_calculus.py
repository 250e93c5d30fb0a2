from fractions import Fraction

import pytest
from hypothesis import given

from bvbicomplex.graded_algebra import ZERO, mul
from bvbicomplex.jet_calculus import (
    EvolutionaryVectorField, JetContext, antifield_number, euler_vf, field_degree_components,
    prolong, total_derivative, variational_derivative,
)
from strategies import cs, element, scalar_ctx, seeds

ctx = scalar_ctx()
X, Y = ctx.var("x"), ctx.var("y")
xslot, yslot = (ctx.field_id("x"), 0, 0), (ctx.field_id("y"), 0, 0)


def test_antifields_are_generated():
    names = [f.name for f in ctx.fields]
    assert names == ["x", "y", "x+", "y+"]
    xp = ctx.descriptor(ctx.field_id("x+"))
    assert (xp.ghost, xp.parity, xp.is_antifield) == (-1, 1, True)
    assert ctx.partner_slot(xslot) == (ctx.field_id("x+"), 0, 0)


def test_inconsistent_descriptors_rejected():
    from bvbicomplex.jet_calculus import FieldDescriptor
    bad = (FieldDescriptor("x", 0, 0, partner="x+"),
           FieldDescriptor("x+", 0, 1, is_antifield=True, partner="x"))
    with pytest.raises(ValueError):
        JetContext(1, bad)


def test_cs_context_size():
    c = cs("sl2")
    # c and A_i over a 3-dimensional algebra: 3 + 9 field components
    assert len(c.ctx.slots(antifields=False)) == 12
    assert len(c.ctx.slots(antifields=True)) == 12


def test_total_derivative_of_jet():
    assert total_derivative(ctx, 1, X) == ctx.var("x", alpha=(1, 0))
    assert total_derivative(ctx, 2, mul(X, X)) == mul(X, ctx.var("x", alpha=(0, 1))).scale(2)


def test_variational_derivative_examples():
    x1 = ctx.var("x", alpha=(1, 0))
    # delta_x (x_1^2 / 2) = -x_11
    assert variational_derivative(ctx, xslot, mul(x1, x1).scale(Fraction(1, 2))) == -ctx.var("x", alpha=(2, 0))
    assert variational_derivative(ctx, xslot, total_derivative(ctx, 1, mul(X, Y))) == ZERO


def test_euler_and_antifield_counts():
    xp = ctx.var("x+")
    p = mul(X, X) + mul(X, xp)
    assert euler_vf(ctx, p) == p.scale(2)
    assert antifield_number(ctx, p) == mul(X, xp)
    assert sorted(field_degree_components(p + 1)) == [0, 2]


@given(seeds, seeds)
def test_total_derivative_leibniz(a, b):
    f, g = element(ctx, a, form_degrees=(0, 1)), element(ctx, b, form_degrees=(0, 1))
    for i in (1, 2):
        assert total_derivative(ctx, i, mul(f, g)) == \
            mul(total_derivative(ctx, i, f), g) + mul(f, total_derivative(ctx, i, g))


@given(seeds)
def test_total_derivatives_commute(a):
    f = element(ctx, a)
    assert total_derivative(ctx, 1, total_derivative(ctx, 2, f)) == \
        total_derivative(ctx, 2, total_derivative(ctx, 1, f))


@given(seeds, seeds)
def test_variational_derivative_kills_total_derivatives(a, b):
    f = element(ctx, a, max_jet_order=1)
    for i in (1, 2):
        df = total_derivative(ctx, i, f)
        for slot in ctx.slots():
            assert variational_derivative(ctx, slot, df) == ZERO


@given(seeds, seeds)
def test_prolongation_commutes_with_total_derivatives(a, b):
    q = element(ctx, a, max_jet_order=1, min_degree=1)
    v = EvolutionaryVectorField.from_dict({xslot: q})
    f = element(ctx, b, max_jet_order=1)
    for i in (1, 2):
        assert prolong(ctx, v, total_derivative(ctx, i, f)) == total_derivative(ctx, i, prolong(ctx, v, f))


@given(seeds)
def test_euler_field_on_homogeneous_components(a):
    f = element(ctx, a, max_degree=3)
    for k, fk in field_degree_components(f).items():
        assert euler_vf(ctx, fk) == fk.scale(k)
