"""The truncated variational bicomplex on t-independent densities.

An element is a graded polynomial over jets, sigma_1..sigma_n and eta.  The
sigma-count is the form degree ``p`` (``sigma_I f_I`` lives in F^{-p,q} with
``p = |I|``), eta has form degree ``n + 1``.  ``d`` lowers the sigma-count,
the homotopy ``H`` raises it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import comb
from typing import Dict, Tuple

from .graded_algebra import (
    ETA, JET, SIGMA, ZERO, GradedPolynomial, add_all, eta, from_sigma_components, mul,
    partial_left, sigma_components, sigma_poly,
)
from .jet_calculus import (
    JetContext, field_degree_components, jets_present, signed_total_derivative_multi,
    total_derivative, total_derivative_multi, variational_derivative,
)

BiForm = GradedPolynomial


def bidegree(f: BiForm) -> Tuple[int, int]:
    """(p, q): form degree and ghost number of a homogeneous element."""
    ghost, _, form = f.degrees()
    return form, ghost


def filtration_degree(ctx: JetContext, f: BiForm) -> int:
    """Smallest form degree among the terms (eta counts as n + 1)."""
    if not f.terms:
        return ctx.n + 2
    return min(sum(g.form for g in m) for m in f.terms)


def horizontal_d(ctx: JetContext, f: BiForm) -> BiForm:
    """``d(sigma_I f_I) = sum_l (-1)^(l-1) sigma_{I - i_l} d_{i_l} f_I``; ``d eta = sigma_1..sigma_n``."""
    parts = []
    for key, fI in sigma_components(f).items():
        if key == "eta":
            parts.append(mul(sigma_poly(tuple(range(1, ctx.n + 1))), fI))
            continue
        for ell, i in enumerate(key):
            dfi = total_derivative(ctx, i, fI)
            if not dfi.terms:
                continue
            rest = key[:ell] + key[ell + 1:]
            term = mul(sigma_poly(rest), dfi)
            parts.append(-term if ell & 1 else term)
    return add_all(parts)


def _binom(alpha, beta) -> int:
    out = 1
    for a, b in zip(alpha, beta):
        out *= comb(a, b)
    return out


def _sub_indices(alpha):
    """All beta with 0 < beta <= alpha."""
    for beta in iproduct(*(range(a + 1) for a in alpha)):
        if any(beta):
            yield beta


def _homotopy_component(ctx: JetContext, f: GradedPolynomial, p: int) -> Dict[int, GradedPolynomial]:
    """The coefficients h_i with ``H(sigma_I f) = sum_i sigma_i sigma_I h_i``."""
    out: Dict[int, list] = {i: [] for i in range(1, ctx.n + 1)}
    for k, fk in field_degree_components(f).items():
        if k == 0:
            continue
        weight = Fraction(1, k)
        for slot, alphas in jets_present(fk).items():
            x = GradedPolynomial.gen(ctx.gen(slot))
            for alpha in alphas:
                dfa = partial_left(fk, ctx.gen(slot, alpha))
                for beta in _sub_indices(alpha):
                    rem = tuple(a - b for a, b in zip(alpha, beta))
                    inner = mul(x, signed_total_derivative_multi(ctx, rem, dfa))
                    if not inner.terms:
                        continue
                    c0 = weight * _binom(alpha, beta) / (sum(beta) + p)
                    for i in range(1, ctx.n + 1):
                        if not beta[i - 1]:
                            continue
                        lowered = list(beta)
                        lowered[i - 1] -= 1
                        out[i].append(total_derivative_multi(ctx, tuple(lowered), inner)
                                      .scale(c0 * beta[i - 1]))
    return {i: add_all(v) for i, v in out.items()}


def homotopy_H(ctx: JetContext, f: BiForm) -> BiForm:
    """Contracting homotopy: ``dH + Hd = 1`` on filtration >= 1, ``dH + P∫ = 1`` at p = 0.

    Field-degree-k pieces get the weight 1/k of the scaling integral.  The
    constant part of a top-form-degree element maps to eta, and eta maps to
    sigma_1...sigma_n.  Other constants are sent to zero.
    """
    n = ctx.n
    top = tuple(range(1, n + 1))
    parts = []
    for key, fI in sigma_components(f).items():
        if key == "eta":
            parts.append(mul(sigma_poly(top), fI))
            continue
        p = len(key)
        if p == n:
            const = fI.filter(lambda m: not any(g.rank == JET for g in m))
            if const.terms:
                parts.append(mul(GradedPolynomial.gen(eta(n)), const))
            continue
        for i, hi in _homotopy_component(ctx, fI, p).items():
            if hi.terms and i not in key:
                parts.append(mul(sigma_poly((i,) + key), hi))
    return add_all(parts)


def projection_P(ctx: JetContext, f) -> BiForm:
    """``P∫f = sum_k (1/k) sum_slots x_slot delta_slot f^(k)`` on a form-degree-0 density.

    Accepts either a density or a ``Functional``; the result only depends on ``∫f``.
    """
    if isinstance(f, Functional):
        f = f.rep
    parts = []
    for k, fk in field_degree_components(f).items():
        if k == 0:
            continue
        for slot in jets_present(fk):
            x = GradedPolynomial.gen(ctx.gen(slot))
            parts.append(mul(x, variational_derivative(ctx, slot, fk)).scale(Fraction(1, k)))
    return add_all(parts)


def form_degree_part(f: BiForm, p: int) -> BiForm:
    return f.filter(lambda m: sum(g.form for g in m) == p)


def is_total_derivative(ctx: JetContext, f: BiForm) -> bool:
    """True iff the density is a sum of total derivatives.

    Decided by exactness of the variational complex: every variational
    derivative vanishes and there is no field-independent part.
    """
    if any(g.rank in (SIGMA, ETA) for m in f.terms for g in m):
        raise ValueError("is_total_derivative expects a form-degree-0 density")
    if any(not any(g.rank == JET for g in m) for m in f.terms):
        return False
    return all(not variational_derivative(ctx, slot, f).terms for slot in jets_present(f))


@dataclass(frozen=True)
class Functional:
    """``∫f``: a density modulo total derivatives."""

    ctx: JetContext
    rep: GradedPolynomial

    def __post_init__(self):
        if any(g.rank in (SIGMA, ETA) for m in self.rep.terms for g in m):
            raise ValueError("a functional is represented by a form-degree-0 density")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Functional):
            return NotImplemented
        diff = self.rep - other.rep
        return not diff.terms or is_total_derivative(self.ctx, diff)

    def is_zero(self) -> bool:
        return not self.rep.terms or is_total_derivative(self.ctx, self.rep)

    def __add__(self, other: "Functional") -> "Functional":
        return Functional(self.ctx, self.rep + other.rep)

    def __sub__(self, other: "Functional") -> "Functional":
        return Functional(self.ctx, self.rep - other.rep)

    def scale(self, c) -> "Functional":
        return Functional(self.ctx, self.rep.scale(c))

    __hash__ = None


def integrate(ctx: JetContext, f: BiForm) -> Functional:
    """``∫``: keep the form-degree-0 part."""
    return Functional(ctx, form_degree_part(f, 0))
