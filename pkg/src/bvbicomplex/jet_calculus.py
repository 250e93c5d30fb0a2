"""Jet-space calculus on the t-independent complex.

Fields are described once; every field gets an antifield partner with
ghost ``-1 - ghost`` and opposite parity.  A *slot* is one scalar component
``(field_id, lie_index, space_index)`` of a field; jet generators are slots
decorated with a multi-index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .graded_algebra import (
    JET, ZERO, Gen, GradedPolynomial, Monomial, _acc, add_all, apply_derivation,
    jet, mono_mul, partial_left, shift,
)

Slot = Tuple[int, int, int]


@dataclass(frozen=True)
class FieldDescriptor:
    name: str
    ghost: int
    parity: int
    arity: int = 0          # 0 for scalars, 1 for a spacetime covector like A_i
    lie_dim: int = 1
    is_antifield: bool = False
    partner: str = ""


@dataclass(frozen=True)
class JetContext:
    """Field content of a theory on R^n (no explicit t-dependence)."""

    n: int
    fields: Tuple[FieldDescriptor, ...]
    max_jet_order: int = 2
    lie: object = None
    _index: Dict[str, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self._index.update({f.name: k for k, f in enumerate(self.fields)})
        for f in self.fields:
            if f.partner not in self._index:
                raise ValueError(f"field {f.name!r} has no antifield partner")
            p = self.fields[self._index[f.partner]]
            if p.partner != f.name or p.is_antifield == f.is_antifield:
                raise ValueError(f"inconsistent pairing {f.name!r} <-> {p.name!r}")
            if p.ghost != -1 - f.ghost or p.parity != 1 - f.parity % 2:
                raise ValueError(f"antifield grading violated for {f.name!r}")
            if p.arity != f.arity or p.lie_dim != f.lie_dim:
                raise ValueError(f"antifield shape mismatch for {f.name!r}")

    @classmethod
    def build(cls, n: int, fields: Sequence[Tuple], max_jet_order: int = 2,
              lie=None) -> "JetContext":
        """Build from ``(name, ghost, parity, arity, lie_dim)`` rows.

        Antifields are appended automatically with ``name + "+"``.
        """
        descs: List[FieldDescriptor] = []
        anti: List[FieldDescriptor] = []
        for name, ghost, parity, arity, dim in fields:
            descs.append(FieldDescriptor(name, ghost, parity % 2, arity, dim, False, name + "+"))
            anti.append(FieldDescriptor(name + "+", -1 - ghost, 1 - parity % 2, arity, dim,
                                        True, name))
        return cls(n, tuple(descs + anti), max_jet_order, lie)

    # lookups -------------------------------------------------------------
    def __hash__(self):
        return hash((self.n, self.fields, self.max_jet_order))

    def field_id(self, name: str) -> int:
        return self._index[name]

    def descriptor(self, fid: int) -> FieldDescriptor:
        return self.fields[fid]

    def partner_slot(self, slot: Slot) -> Slot:
        fid, a, i = slot
        return (self._index[self.fields[fid].partner], a, i)

    def slots(self, antifields: Optional[bool] = None) -> List[Slot]:
        out = []
        for fid, f in enumerate(self.fields):
            if antifields is not None and f.is_antifield != antifields:
                continue
            spaces = range(1, self.n + 1) if f.arity else (0,)
            for a in range(f.lie_dim):
                for i in spaces:
                    out.append((fid, a, i))
        return out

    def is_antifield_slot(self, slot: Slot) -> bool:
        return self.fields[slot[0]].is_antifield

    def gen(self, slot: Slot, alpha: Optional[Tuple[int, ...]] = None) -> Gen:
        f = self.fields[slot[0]]
        alpha = tuple(alpha) if alpha is not None else (0,) * self.n
        return jet(slot[0], slot[1], slot[2], alpha, f.parity, f.ghost, f.name)

    def var(self, name: str, lie: int = 0, space: int = 0,
            alpha: Optional[Tuple[int, ...]] = None) -> GradedPolynomial:
        return GradedPolynomial.gen(self.gen((self._index[name], lie, space), alpha))

    def multi_indices(self, order: Optional[int] = None) -> List[Tuple[int, ...]]:
        """All multi-indices of |alpha| <= order, graded-lex."""
        order = self.max_jet_order if order is None else order
        out = [a for a in iproduct(range(order + 1), repeat=self.n) if sum(a) <= order]
        return sorted(out, key=lambda a: (sum(a), a))

    def slot_parity(self, slot: Slot) -> int:
        return self.fields[slot[0]].parity


def slot_of(g: Gen) -> Slot:
    return (g.field, g.lie, g.space)


# total derivatives -----------------------------------------------------------

def total_derivative(ctx: JetContext, i: int, p: GradedPolynomial) -> GradedPolynomial:
    """``d_i``: the even derivation shifting every jet multi-index by ``e_i``."""
    acc: Dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        prev = None
        odd_before = 0
        for k, g in enumerate(m):
            if g.rank != JET:
                break
            if g == prev:
                continue
            prev = g
            e = 1
            while k + e < len(m) and m[k + e] == g:
                e += 1
            rest = m[:k] + m[k + 1:]
            s, mm = mono_mul((shift(g, i),), rest)
            if g.parity and odd_before & 1:
                s = -s
            odd_before += g.parity * e
            if s:
                _acc(acc, mm, c * e if s > 0 else -(c * e))
    return GradedPolynomial(acc)


def total_derivative_multi(ctx: JetContext, alpha: Tuple[int, ...],
                           p: GradedPolynomial) -> GradedPolynomial:
    """``d^alpha = d_1^{alpha_1} ... d_n^{alpha_n}``."""
    for i, k in enumerate(alpha, start=1):
        for _ in range(k):
            if not p.terms:
                return p
            p = total_derivative(ctx, i, p)
    return p


def signed_total_derivative_multi(ctx: JetContext, alpha, p):
    """``(-d)^alpha``."""
    q = total_derivative_multi(ctx, alpha, p)
    return -q if sum(alpha) & 1 else q


# evolutionary vector fields -------------------------------------------------------

@dataclass(frozen=True)
class EvolutionaryVectorField:
    """``pr(sum_slot Q[slot] d/d slot)``; unspecified slots map to zero."""

    values: Tuple[Tuple[Slot, GradedPolynomial], ...]

    @classmethod
    def from_dict(cls, d: Dict[Slot, GradedPolynomial]) -> "EvolutionaryVectorField":
        return cls(tuple(sorted((k, v) for k, v in d.items() if v.terms)))

    def as_dict(self) -> Dict[Slot, GradedPolynomial]:
        return dict(self.values)

    def __call__(self, ctx: JetContext, p: GradedPolynomial) -> GradedPolynomial:
        return prolong(ctx, self, p)


def prolong(ctx: JetContext, vf: EvolutionaryVectorField,
            p: GradedPolynomial) -> GradedPolynomial:
    """Apply the prolonged vector field: ``x_alpha -> d^alpha Q[x]``."""
    values = vf.as_dict()

    def image(g: Gen) -> Optional[GradedPolynomial]:
        if g.rank != JET:
            return None
        q = values.get(slot_of(g))
        if q is None:
            return None
        return total_derivative_multi(ctx, g.alpha, q)

    return apply_derivation(p, image)


def jets_present(p: GradedPolynomial) -> Dict[Slot, set]:
    """Map slot -> set of multi-indices at which the slot appears in ``p``."""
    out: Dict[Slot, set] = {}
    for m in p.terms:
        for g in m:
            if g.rank == JET:
                out.setdefault(slot_of(g), set()).add(g.alpha)
    return out


def variational_derivative(ctx: JetContext, slot: Slot, p: GradedPolynomial) -> GradedPolynomial:
    """``delta_slot p = sum_alpha (-d)^alpha d/d(slot_alpha) p`` (left derivatives)."""
    alphas = jets_present(p).get(slot, ())
    parts = []
    for alpha in alphas:
        d = partial_left(p, ctx.gen(slot, alpha))
        parts.append(signed_total_derivative_multi(ctx, alpha, d))
    return add_all(parts)


def euler_vf(ctx: JetContext, p: GradedPolynomial) -> GradedPolynomial:
    """Prolonged Euler field: each term scaled by its number of jet factors."""
    return GradedPolynomial({m: c * k for m, c in p.terms.items()
                             if (k := sum(1 for g in m if g.rank == JET))})


def antifield_number(ctx: JetContext, p: GradedPolynomial) -> GradedPolynomial:
    """Prolonged ``sum xi_{a,alpha} d/d xi_{a,alpha}``: counts antifield factors."""
    out = {}
    for m, c in p.terms.items():
        k = sum(1 for g in m if g.rank == JET and ctx.fields[g.field].is_antifield)
        if k:
            out[m] = c * k
    return GradedPolynomial(out)


def field_degree_components(p: GradedPolynomial) -> Dict[int, GradedPolynomial]:
    out: Dict[int, Dict] = {}
    for m, c in p.terms.items():
        k = sum(1 for g in m if g.rank == JET)
        out.setdefault(k, {})[m] = c
    return {k: GradedPolynomial(v) for k, v in out.items()}


def commutes_with_total_derivatives(ctx: JetContext, vf: EvolutionaryVectorField,
                                    p: GradedPolynomial) -> bool:
    return all(
        prolong(ctx, vf, total_derivative(ctx, i, p)) == total_derivative(ctx, i, prolong(ctx, vf, p))
        for i in range(1, ctx.n + 1)
    )
