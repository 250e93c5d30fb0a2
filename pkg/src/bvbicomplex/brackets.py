"""Soloviev antibracket, BV antibracket, Hamiltonian vector fields, C and iota.

All derivatives are left derivatives.  A density is split as
``sum_I sigma_I f_I`` with sigma on the left; each ``f_I`` is further split by
parity because the printed sign rules depend on ``pa(f_I)``.  Field slots are
the ``x^a``, antifield slots the ``xi_a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Tuple

from . import conventions
from .bicomplex import Functional, _binom, _sub_indices
from .graded_algebra import (
    ZERO, GradedPolynomial, add_all, canonical, mul, partial_left, sigma, sigma_components,
    sigma_poly,
)
from .jet_calculus import (
    EvolutionaryVectorField, JetContext, Slot, antifield_number, euler_vf, jets_present,
    prolong, signed_total_derivative_multi, total_derivative_multi, variational_derivative,
)


def _pieces(f: GradedPolynomial) -> Iterator[Tuple[tuple, int, GradedPolynomial]]:
    """Yield ``(I, parity, f_I^parity)`` over the sigma/parity decomposition."""
    for key, fI in sigma_components(f).items():
        if key == "eta":
            continue  # eta is a constant: it has no jet derivatives
        for par, part in enumerate(fI.split_parity()):
            if part.terms:
                yield key, par, part


class _Derivs:
    """Memoized ``d^beta d/d(slot_alpha) f`` for one piece."""

    def __init__(self, ctx: JetContext, f: GradedPolynomial):
        self.ctx = ctx
        self.f = f
        self.present = jets_present(f)
        self._partial: Dict = {}
        self._tot: Dict = {}

    def partial(self, slot: Slot, alpha) -> GradedPolynomial:
        key = (slot, alpha)
        if key not in self._partial:
            self._partial[key] = partial_left(self.f, self.ctx.gen(slot, alpha))
        return self._partial[key]

    def dpartial(self, slot: Slot, alpha, beta) -> GradedPolynomial:
        key = (slot, alpha, beta)
        if key not in self._tot:
            self._tot[key] = total_derivative_multi(self.ctx, beta, self.partial(slot, alpha))
        return self._tot[key]


def pair_signs(ctx: JetContext, x: Slot, pf: int, nJ: int) -> Tuple[int, int]:
    """Signs of the two pairings for field slot ``x``.

    The first multiplies ``d_x f * d_xi g``, the second ``d_xi f * d_x g``.  Both
    include the prefactor ``(-1)^{(pf + 1)(px + |J|)}``, the second also
    ``(-1)^{pf}``.
    """
    px = ctx.slot_parity(x)
    base = -1 if ((pf + 1) * (px + nJ)) & 1 else 1
    return base, base * (-1 if pf else 1)


def _sigma_prefix(*keys) -> GradedPolynomial:
    return sigma_poly(tuple(i for key in keys for i in key))


def _field_slots(ctx: JetContext, df: _Derivs, dg: _Derivs) -> List[Slot]:
    """Field slots ``x`` such that some pairing (x in f, xi in g) or (xi in f, x in g) occurs."""
    out = set()
    for s in df.present:
        if ctx.is_antifield_slot(s):
            partner = ctx.partner_slot(s)
            if partner in dg.present:
                out.add(partner)
        elif ctx.partner_slot(s) in dg.present:
            out.add(s)
    return sorted(out)


def soloviev(ctx: JetContext, f: GradedPolynomial, g: GradedPolynomial) -> GradedPolynomial:
    """The Soloviev bracket ``(f, g)`` on densities (any form degree).

    ``(sigma_I f_I, sigma_J g_J) = sum_a (-1)^{(pa f_I + 1)(pa x_a + |J|)} sigma_I sigma_J
    sum_{alpha,beta} (d^beta d_{a,alpha} f_I d^alpha d^a_beta g_J
    + (-1)^{pa f_I} d^beta d^a_alpha f_I d^alpha d_{a,beta} g_J)``.
    """
    parts = []
    gpieces = [(J, _Derivs(ctx, gJ)) for J, _, gJ in _pieces(g)]
    for I, pf, fI in _pieces(f):
        df = _Derivs(ctx, fI)
        for J, dg in gpieces:
            prefix = _sigma_prefix(I, J)
            if not prefix.terms:
                continue
            inner = []
            for x in _field_slots(ctx, df, dg):
                xi = ctx.partner_slot(x)
                s1, s2 = pair_signs(ctx, x, pf, len(J))
                acc = []
                for alpha in df.present.get(x, ()):
                    for beta in dg.present.get(xi, ()):
                        acc.append(mul(df.dpartial(x, alpha, beta), dg.dpartial(xi, beta, alpha)))
                second = []
                for alpha in df.present.get(xi, ()):
                    for beta in dg.present.get(x, ()):
                        second.append(mul(df.dpartial(xi, alpha, beta), dg.dpartial(x, beta, alpha)))
                term = add_all(acc)
                if s1 < 0:
                    term = -term
                if second:
                    t2 = add_all(second)
                    term = term + t2 if s2 > 0 else term - t2
                inner.append(term)
            body = add_all(inner)
            if body.terms:
                parts.append(mul(prefix, body))
    return add_all(parts)


def bv_antibracket(ctx: JetContext, F: Functional, G: Functional) -> Functional:
    """``(∫f, ∫g) = sum_a (-1)^{(pa f + 1) pa(x_a)} ∫(delta_a f delta^a g + (-1)^{pa f} delta^a f delta_a g)``.

    The sign uses the parity of the field ``x_a``; see ``conventions``.
    """
    parts = []
    gsplit = [g for g in G.rep.split_parity() if g.terms]
    for pf, f in enumerate(F.rep.split_parity()):
        if not f.terms:
            continue
        fvars = jets_present(f)
        for g in gsplit:
            gvars = jets_present(g)
            for x in ctx.slots(antifields=False):
                xi = ctx.partner_slot(x)
                s1, s2 = conventions.bv_signs(ctx, x, pf)
                if x in fvars and xi in gvars:
                    t = mul(variational_derivative(ctx, x, f), variational_derivative(ctx, xi, g))
                    parts.append(t if s1 > 0 else -t)
                if xi in fvars and x in gvars:
                    t = mul(variational_derivative(ctx, xi, f), variational_derivative(ctx, x, g))
                    parts.append(t if s2 > 0 else -t)
    return Functional(ctx, add_all(parts))


def hamiltonian_vf(ctx: JetContext, f: GradedPolynomial) -> EvolutionaryVectorField:
    """``X_f``: the evolutionary vector field with ``X_f g = (f, g)`` on sigma-free jets."""
    values: Dict[Slot, List[GradedPolynomial]] = {}
    for I, pf, fI in _pieces(f):
        prefix = sigma_poly(I)
        present = jets_present(fI)
        for x in ctx.slots(antifields=False):
            xi = ctx.partner_slot(x)
            s1, s2 = pair_signs(ctx, x, pf, 0)
            if x in present:
                v = mul(prefix, variational_derivative(ctx, x, fI))
                values.setdefault(xi, []).append(v if s1 > 0 else -v)
            if xi in present:
                v = mul(prefix, variational_derivative(ctx, xi, fI))
                values.setdefault(x, []).append(v if s2 > 0 else -v)
    return EvolutionaryVectorField.from_dict({k: add_all(v) for k, v in values.items()})


def apply_X(ctx: JetContext, f: GradedPolynomial, g: GradedPolynomial) -> GradedPolynomial:
    return prolong(ctx, hamiltonian_vf(ctx, f), g)


def homotopy_C(ctx: JetContext, f: GradedPolynomial, g: GradedPolynomial) -> GradedPolynomial:
    """The homotopy between ``ad(f)`` and ``X_f``.

    ``C(sigma_I f_I, sigma_J g_J) = sum_i sum_a (-1)^{(pa f_I + 1)(pa x_a + |J|)} sigma_i sigma_I
    sigma_J sum_{alpha,beta} sum_{0 < gamma <= alpha} gamma_i/|gamma| binom(alpha, gamma)
    (-d)^{gamma - i} (d^beta d_{a,alpha} f_I d^{alpha-gamma} d^a_beta g_J
    + (-1)^{pa f_I} d^beta d^a_alpha f_I d^{alpha-gamma} d_{a,beta} g_J)``.
    """
    n = ctx.n
    parts = []
    gpieces = [(J, _Derivs(ctx, gJ)) for J, _, gJ in _pieces(g)]
    for I, pf, fI in _pieces(f):
        df = _Derivs(ctx, fI)
        for J, dg in gpieces:
            inner: Dict[int, List[GradedPolynomial]] = {i: [] for i in range(1, n + 1)}
            for x in _field_slots(ctx, df, dg):
                xi = ctx.partner_slot(x)
                s1, s2 = pair_signs(ctx, x, pf, len(J))
                for left, right, s in ((x, xi, s1), (xi, x, s2)):
                    for alpha in df.present.get(left, ()):
                        for beta in dg.present.get(right, ()):
                            a_part = df.dpartial(left, alpha, beta)
                            for gamma in _sub_indices(alpha):
                                rem = tuple(a - c for a, c in zip(alpha, gamma))
                                prod = mul(a_part, dg.dpartial(right, beta, rem))
                                if not prod.terms:
                                    continue
                                w = Fraction(s * _binom(alpha, gamma), sum(gamma))
                                for i in range(1, n + 1):
                                    if not gamma[i - 1]:
                                        continue
                                    low = list(gamma)
                                    low[i - 1] -= 1
                                    inner[i].append(signed_total_derivative_multi(ctx, tuple(low), prod)
                                                    .scale(w * gamma[i - 1]))
            for i, lst in inner.items():
                body = add_all(lst)
                if not body.terms:
                    continue
                prefix = _sigma_prefix((i,), I, J)
                if prefix.terms:
                    parts.append(mul(prefix, body))
    return add_all(parts)


def iota_generic(ctx: JetContext, i: int, f: GradedPolynomial) -> GradedPolynomial:
    """``iota_i = sigma_i (1 - N)`` where ``N`` counts antifield jet factors."""
    return mul(GradedPolynomial.gen(sigma(i)), f - antifield_number(ctx, f))


def iota_cs(ctx: JetContext, i: int, f: GradedPolynomial) -> GradedPolynomial:
    """``iota_i = -1/2 sigma_i (E - 2)`` with ``E`` the Euler vector field."""
    return mul(GradedPolynomial.gen(sigma(i)), euler_vf(ctx, f) - f.scale(2)).scale(Fraction(-1, 2))


@dataclass(frozen=True)
class BracketReport:
    left: str
    right: str
    result: str
    ghost: int


def bracket_report(ctx: JetContext, f: GradedPolynomial, g: GradedPolynomial) -> BracketReport:
    """Soloviev bracket with degree bookkeeping: ``gh (f,g) = gh f + gh g + 1``."""
    r = soloviev(ctx, f, g)
    gh = f.degrees()[0] + g.degrees()[0] + 1
    if r.terms and r.degrees()[0] != gh:
        raise AssertionError("antibracket changed ghost number by other than +1")
    return BracketReport(str(f), str(g), str(r), gh)
