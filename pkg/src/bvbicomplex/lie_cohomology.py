"""Chevalley-Eilenberg cochains, their cohomology, and the shifted Poisson bracket.

A cochain is a dict from strictly increasing index tuples to Fractions:
``{(0, 2): 3}`` is ``3 theta^0 theta^2``.  Invariant polynomials on the Lie
algebra are dicts from exponent vectors to Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Sequence, Tuple

from .lie_algebra import InvalidLieAlgebra, LieAlgebraSpec, Representation, check_representation
from .linalg import nullspace, rank, rref

Cochain = Dict[Tuple[int, ...], Fraction]
Poly = Dict[Tuple[int, ...], Fraction]


class NotInvariant(ValueError):
    """The polynomial is not ad-invariant."""


# exterior algebra ---------------------------------------------------------------

def _clean(w: Cochain) -> Cochain:
    return {k: v for k, v in w.items() if v}


def _add_into(acc: Cochain, key, v) -> None:
    acc[key] = acc.get(key, Fraction(0)) + v


def _sort_sign(idx: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sign of the permutation sorting ``idx``; 0 if an index repeats."""
    if len(set(idx)) < len(idx):
        return 0, ()
    idx = list(idx)
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


def wedge(a: Cochain, b: Cochain) -> Cochain:
    out: Cochain = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            s, k = _sort_sign(ka + kb)
            if s:
                _add_into(out, k, s * va * vb)
    return _clean(out)


def add(*ws: Cochain) -> Cochain:
    out: Cochain = {}
    for w in ws:
        for k, v in w.items():
            _add_into(out, k, v)
    return _clean(out)


def scale(w: Cochain, c) -> Cochain:
    return _clean({k: v * c for k, v in w.items()})


def theta(a: int) -> Cochain:
    return {(a,): Fraction(1)}


def degree_of(w: Cochain) -> int:
    degs = {len(k) for k in w}
    if len(degs) > 1:
        raise ValueError("inhomogeneous cochain")
    return degs.pop() if degs else 0


def basis(dim: int, k: int) -> List[Tuple[int, ...]]:
    return list(combinations(range(dim), k))


def left_derivative(w: Cochain, a: int) -> Cochain:
    """``d/d theta^a`` acting from the left."""
    out: Cochain = {}
    for k, v in w.items():
        if a in k:
            p = k.index(a)
            _add_into(out, k[:p] + k[p + 1:], v if p % 2 == 0 else -v)
    return _clean(out)


def apply_odd_derivation(w: Cochain, images: Dict[int, Cochain]) -> Cochain:
    """Extend ``theta^a -> images[a]`` to an odd derivation (images of even degree)."""
    out: Cochain = {}
    for k, v in w.items():
        for p, a in enumerate(k):
            img = images.get(a)
            if not img:
                continue
            left = {k[:p]: Fraction(1)}
            right = {k[p + 1:]: Fraction(1)}
            term = wedge(wedge(left, img), right)
            for kk, vv in term.items():
                _add_into(out, kk, vv * v * (-1 if p % 2 else 1))
    return _clean(out)


def apply_even_derivation(w: Cochain, images: Dict[int, Cochain]) -> Cochain:
    """Extend ``theta^a -> images[a]`` (odd images) to an even derivation."""
    out: Cochain = {}
    for k, v in w.items():
        for p, a in enumerate(k):
            img = images.get(a)
            if not img:
                continue
            term = wedge(wedge({k[:p]: Fraction(1)}, img), {k[p + 1:]: Fraction(1)})
            for kk, vv in term.items():
                _add_into(out, kk, vv * v)
    return _clean(out)


# the CE complex -----------------------------------------------------------------

@dataclass(frozen=True)
class CEComplex:
    lie: LieAlgebraSpec

    @property
    def dim(self) -> int:
        return self.lie.dim

    def basis(self, k: int) -> List[Tuple[int, ...]]:
        return basis(self.dim, k)

    def d_theta(self, a: int) -> Cochain:
        """``delta theta^a = -1/2 f^a_bc theta^b theta^c``."""
        out: Cochain = {}
        for c, b, e, v in self.lie.nonzero_f:
            if c == a and b < e:
                # f antisymmetric: the (b,e) and (e,b) terms coincide
                _add_into(out, (b, e), -v)
        return _clean(out)

    def differential(self, w: Cochain) -> Cochain:
        return apply_odd_derivation(w, {a: self.d_theta(a) for a in range(self.dim)})

    def matrix(self, k: int) -> List[List[Fraction]]:
        """Matrix of ``delta: C^k -> C^{k+1}`` in the sorted bases (rows = targets)."""
        src, tgt = self.basis(k), self.basis(k + 1)
        pos = {b: i for i, b in enumerate(tgt)}
        m = [[Fraction(0)] * len(src) for _ in tgt]
        for j, b in enumerate(src):
            for kk, v in self.differential({b: Fraction(1)}).items():
                m[pos[kk]][j] = v
        return m

    def coadjoint(self, a: int, w: Cochain) -> Cochain:
        """``e_a`` acting on cochains: ``theta^b -> -f^b_ac theta^c``."""
        imgs: Dict[int, Cochain] = {}
        for b, aa, c, v in self.lie.nonzero_f:
            if aa == a:
                _add_into(imgs.setdefault(b, {}), (c,), -v)
        return apply_even_derivation(w, {k: _clean(v) for k, v in imgs.items()})


def ce_differential(g: LieAlgebraSpec, w: Cochain) -> Cochain:
    return CEComplex(g).differential(w)


def _vec_to_cochain(vec, keys) -> Cochain:
    return _clean({k: Fraction(v) for k, v in zip(keys, vec)})


@dataclass
class CohomologyReport:
    algebra: str
    betti: List[int]
    representatives: Dict[int, List[Cochain]] = field(default_factory=dict)
    invariant_dims: List[int] = field(default_factory=list)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def to_json(self) -> Dict:
        return {
            "algebra": self.algebra,
            "betti": self.betti,
            "invariant_dims": self.invariant_dims,
            "representatives": {str(k): [render_cochain(w) for w in ws]
                                for k, ws in self.representatives.items()},
        }


def cohomology(g: LieAlgebraSpec, up_to_degree: int = None) -> CohomologyReport:
    """Betti numbers, cocycle representatives and invariant-cochain dimensions."""
    ce = CEComplex(g)
    top = g.dim if up_to_degree is None else min(up_to_degree, g.dim)
    mats = {k: ce.matrix(k) for k in range(-1, top + 1) if k >= 0}
    ranks = {k: rank(m) if m and m[0] else 0 for k, m in mats.items()}
    ranks[-1] = 0
    betti, reps, inv = [], {}, []
    for k in range(top + 1):
        dimk = comb(g.dim, k)
        b = dimk - ranks[k] - ranks[k - 1]
        betti.append(b)
        reps[k] = _representatives(ce, k, mats) if b else []
        inv.append(len(invariant_cochains(g, k)))
    return CohomologyReport(g.name, betti, reps, inv)


def _representatives(ce: CEComplex, k: int, mats) -> List[Cochain]:
    """A basis of cocycles modulo coboundaries, by extending the coboundary span."""
    keys = ce.basis(k)
    cocycles = nullspace(mats[k], len(keys)) if mats[k] else \
        [[Fraction(int(i == j)) for i in range(len(keys))] for j in range(len(keys))]
    bound = []
    if k > 0:
        prev = mats[k - 1]
        bound = [list(col) for col in zip(*prev)] if prev and prev[0] else []
    chosen, span = [], list(bound)
    r = rank(span) if span else 0
    for v in cocycles:
        trial = span + [v]
        rt = rank(trial)
        if rt > r:
            chosen.append(_vec_to_cochain(v, keys))
            span, r = trial, rt
    return chosen


def invariant_cochains(g: LieAlgebraSpec, k: int) -> List[Cochain]:
    """Basis of ``C^k(g)^g``: common kernel of the coadjoint operators."""
    ce = CEComplex(g)
    keys = ce.basis(k)
    pos = {b: i for i, b in enumerate(keys)}
    rows: List[List[Fraction]] = []
    for a in range(g.dim):
        block = [[Fraction(0)] * len(keys) for _ in keys]
        for j, b in enumerate(keys):
            for kk, v in ce.coadjoint(a, {b: Fraction(1)}).items():
                block[pos[kk]][j] = v
        rows.extend(block)
    rows = [r for r in rows if any(r)]
    return [_vec_to_cochain(v, keys) for v in nullspace(rows, len(keys))]


def shifted_poisson(g: LieAlgebraSpec, f: Cochain, h: Cochain) -> Cochain:
    """``{f, h} = (-1)^k kappa^{ab} (d f/d theta^a)(d h/d theta^b)``, ``k = deg f``."""
    if not f or not h:
        return {}
    k = degree_of(f)
    kinv = g.kappa_inv
    parts = []
    for a in range(g.dim):
        da = left_derivative(f, a)
        if not da:
            continue
        for b in range(g.dim):
            if kinv[a][b]:
                parts.append(scale(wedge(da, left_derivative(h, b)), kinv[a][b]))
    return scale(add(*parts), (-1) ** k)


def rho_cochain(g: LieAlgebraSpec) -> Cochain:
    """``1/6 <theta, [theta, theta]>``."""
    parts = []
    for c, a, b, v in g.nonzero_f:
        for e in range(g.dim):
            if g.kappa[e][c]:
                s, key = _sort_sign((e, a, b))
                if s:
                    parts.append({key: Fraction(s) * v * g.kappa[e][c] / 6})
    return add(*parts)


def render_cochain(w: Cochain) -> str:
    if not w:
        return "0"
    out = []
    for k in sorted(w, key=lambda t: (len(t), t)):
        mono = "*".join(f"th{a}" for a in k) or "1"
        out.append(f"{w[k]} * {mono}")
    return " + ".join(out)


# invariant polynomials --------------------------------------------------------

def _padd(acc: Poly, k, v) -> None:
    acc[k] = acc.get(k, Fraction(0)) + v


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for a, u in p.items():
        for b, v in q.items():
            _padd(out, tuple(x + y for x, y in zip(a, b)), u * v)
    return {k: v for k, v in out.items() if v}


def poly_add(*ps: Poly) -> Poly:
    out: Poly = {}
    for p in ps:
        for k, v in p.items():
            _padd(out, k, v)
    return {k: v for k, v in out.items() if v}


def poly_partial(p: Poly, a: int) -> Poly:
    out: Poly = {}
    for k, v in p.items():
        if k[a]:
            kk = list(k)
            kk[a] -= 1
            _padd(out, tuple(kk), v * k[a])
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class InvariantPolynomial:
    """A polynomial on ``g`` of degree ``ell``; it sits in graded degree ``2 ell``."""

    coeffs: Tuple[Tuple[Tuple[int, ...], Fraction], ...]
    ell: int
    name: str = ""

    @classmethod
    def from_dict(cls, p: Poly, ell: int, name: str = "") -> "InvariantPolynomial":
        for k in p:
            if sum(k) != ell:
                raise ValueError("polynomial is not homogeneous of the stated degree")
        return cls(tuple(sorted(p.items())), ell, name)

    @property
    def poly(self) -> Poly:
        return dict(self.coeffs)

    @property
    def graded_degree(self) -> int:
        return 2 * self.ell

    def __mul__(self, other: "InvariantPolynomial") -> "InvariantPolynomial":
        return InvariantPolynomial.from_dict(poly_mul(self.poly, other.poly), self.ell + other.ell,
                                             f"({self.name})({other.name})")


def _linear(dim: int, a: int) -> Poly:
    return {tuple(int(i == a) for i in range(dim)): Fraction(1)}


def trace_polynomial(g: LieAlgebraSpec, rep: Representation, ell: int) -> InvariantPolynomial:
    """``P_{V,ell}(x) = Tr_V(rho(x)^ell)``."""
    check_representation(g, rep)
    n, d = rep.size, g.dim
    X = [[{} for _ in range(n)] for _ in range(n)]
    for a in range(d):
        m = rep.matrix(a)
        for r in range(n):
            for s in range(n):
                if m[r][s]:
                    X[r][s] = poly_add(X[r][s], {k: v * m[r][s] for k, v in _linear(d, a).items()})
    M = [[({(0,) * d: Fraction(1)} if r == s else {}) for s in range(n)] for r in range(n)]
    for _ in range(ell):
        M = [[poly_add(*(poly_mul(M[r][t], X[t][s]) for t in range(n))) for s in range(n)]
             for r in range(n)]
    P = poly_add(*(M[r][r] for r in range(n)))
    return InvariantPolynomial.from_dict(P, ell, f"Tr_{rep.name}^{ell}")


def quadratic_casimir(g: LieAlgebraSpec) -> InvariantPolynomial:
    """``Q(x) = 1/2 <x, x>``."""
    d = g.dim
    P: Poly = {}
    for a in range(d):
        for b in range(d):
            if g.kappa[a][b]:
                _padd(P, tuple(int(i == a) + int(i == b) for i in range(d)), g.kappa[a][b] / 2)
    return InvariantPolynomial.from_dict({k: v for k, v in P.items() if v}, 2, "Q")


def gradient(g: LieAlgebraSpec, P: InvariantPolynomial) -> List[Poly]:
    """``(grad P)^a = kappa^{ab} d_b P``."""
    kinv = g.kappa_inv
    parts = [poly_partial(P.poly, b) for b in range(g.dim)]
    return [poly_add(*({k: v * kinv[a][b] for k, v in parts[b].items()} for b in range(g.dim)
                       if kinv[a][b])) for a in range(g.dim)]


def is_invariant(g: LieAlgebraSpec, P: InvariantPolynomial) -> bool:
    """``<grad P(x), [y, x]> = 0``, i.e. ``sum f^b_cd x^d d_b P = 0`` for every ``c``."""
    d = g.dim
    for c in range(d):
        acc: List[Poly] = []
        for b, cc, e, v in g.nonzero_f:
            if cc == c:
                acc.append({k: w * v for k, w in poly_mul(_linear(d, e), poly_partial(P.poly, b)).items()})
        if poly_add(*acc):
            return False
    return True


def theta_big(g: LieAlgebraSpec) -> List[Cochain]:
    """``Theta^a = 1/2 f^a_bc theta^b theta^c``."""
    ce = CEComplex(g)
    return [scale(ce.d_theta(a), -1) for a in range(g.dim)]


def evaluate_poly_at(p: Poly, values: Sequence[Cochain]) -> Cochain:
    """Substitute even cochains for the polynomial variables."""
    out: List[Cochain] = []
    for k, v in p.items():
        term: Cochain = {(): Fraction(v)}
        for a, e in enumerate(k):
            for _ in range(e):
                term = wedge(term, values[a])
                if not term:
                    break
        out.append(term)
    return add(*out)


def evaluate_at_Theta(g: LieAlgebraSpec, P: InvariantPolynomial) -> Cochain:
    return evaluate_poly_at(P.poly, theta_big(g))


def tau(g: LieAlgebraSpec, P: InvariantPolynomial) -> Cochain:
    """``tau P = (2 ell - 1)^{-1} <grad P(Theta), theta> = (2 ell - 1)^{-1} sum_b (d_b P)(Theta) theta^b``."""
    if not is_invariant(g, P):
        raise NotInvariant(P.name or "polynomial")
    Th = theta_big(g)
    parts = [wedge(evaluate_poly_at(poly_partial(P.poly, b), Th), theta(b)) for b in range(g.dim)]
    return scale(add(*parts), Fraction(1, 2 * P.ell - 1))


def trace_of_odd_power(g: LieAlgebraSpec, rep: Representation, m: int) -> Cochain:
    """``Tr_V(rho(theta)^m)`` as a cochain of degree ``m``."""
    n = rep.size
    T = [[{} for _ in range(n)] for _ in range(n)]
    for a in range(g.dim):
        mat = rep.matrix(a)
        for r in range(n):
            for s in range(n):
                if mat[r][s]:
                    T[r][s] = add(T[r][s], {(a,): Fraction(mat[r][s])})
    M = [[({(): Fraction(1)} if r == s else {}) for s in range(n)] for r in range(n)]
    for _ in range(m):
        M = [[add(*(wedge(M[r][t], T[t][s]) for t in range(n))) for s in range(n)] for r in range(n)]
    return add(*(M[r][r] for r in range(n)))
