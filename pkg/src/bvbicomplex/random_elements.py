"""Reproducible random elements for the property suites.

Monomials are drawn uniformly: a field degree in ``[min_degree, max_degree]``,
then that many jet factors, each a uniformly chosen slot with a uniformly
chosen multi-index of order ``<= max_jet_order``.  Coefficients are uniform in
``{-3..3} \\ {0}``.  An optional sigma set is drawn per term.  Everything is
driven by a ``random.Random`` so a seed pins the whole sample.

Independent elements rarely share a field/antifield pair, so most of their
brackets vanish.  ``random_tuple`` draws several elements from a common pool
of ``pool`` fields together with their antifields; brackets and nested
brackets of such tuples are then generically nonzero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .graded_algebra import ZERO, GradedPolynomial, add_all, mul, product, sigma_poly
from .jet_calculus import JetContext

COEFFS = (-3, -2, -1, 1, 2, 3)


@dataclass(frozen=True)
class RandomConfig:
    max_jet_order: int = 1
    min_degree: int = 1
    max_degree: int = 2
    n_terms: int = 3
    form_degrees: Sequence[int] = (0,)
    homogeneous: bool = True
    slots_from: Optional[Sequence[str]] = None
    pool: Optional[int] = None


def _slots(ctx: JetContext, names):
    slots = ctx.slots()
    if names is None:
        return slots
    ids = {ctx.field_id(n) for n in names}
    return [s for s in slots if s[0] in ids]


def random_monomial(ctx: JetContext, rng: random.Random, cfg: RandomConfig,
                    degree: int, slots=None) -> GradedPolynomial:
    slots = slots or _slots(ctx, cfg.slots_from)
    alphas = ctx.multi_indices(cfg.max_jet_order)
    factors = [GradedPolynomial.gen(ctx.gen(rng.choice(slots), rng.choice(alphas)))
               for _ in range(degree)]
    return product(factors)


def random_sigma(ctx: JetContext, rng: random.Random, p: int) -> GradedPolynomial:
    return sigma_poly(tuple(sorted(rng.sample(range(1, ctx.n + 1), p))))


def random_element(ctx: JetContext, rng: random.Random,
                   cfg: RandomConfig = RandomConfig(), slots=None) -> GradedPolynomial:
    """A nonzero random element; homogeneous in ghost and parity if requested.

    With ``homogeneous`` set, the first nonzero term fixes (ghost, parity, form)
    and later terms are redrawn until they match.
    """
    target = None
    terms: List[GradedPolynomial] = []
    attempts = 0
    while len(terms) < cfg.n_terms and attempts < 200 * cfg.n_terms:
        attempts += 1
        deg = rng.randint(cfg.min_degree, cfg.max_degree)
        m = random_monomial(ctx, rng, cfg, deg, slots)
        p = rng.choice(list(cfg.form_degrees))
        m = mul(random_sigma(ctx, rng, p), m)
        if not m.terms:
            continue
        if cfg.homogeneous:
            degs = m.degrees()
            if target is None:
                target = degs
            elif degs != target:
                continue
        terms.append(m.scale(rng.choice(COEFFS)))
    out = add_all(terms)
    if not out.terms:
        return random_element(ctx, rng, cfg, slots)
    return out


def random_pool(ctx: JetContext, rng: random.Random, size: int) -> List:
    """``size`` field slots and their antifield partners."""
    fields = [s for s in ctx.slots(antifields=False)]
    pick = rng.sample(fields, min(size, len(fields)))
    return sorted(pick + [ctx.partner_slot(s) for s in pick])


def random_tuple(ctx: JetContext, rng: random.Random, cfg: RandomConfig = RandomConfig(),
                 k: int = 3) -> List[GradedPolynomial]:
    """``k`` random elements sharing one slot pool (``cfg.pool`` fields, default 2)."""
    slots = random_pool(ctx, rng, cfg.pool or 2)
    return [random_element(ctx, rng, cfg, slots) for _ in range(k)]
