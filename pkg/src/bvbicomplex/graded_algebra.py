"""Exact graded-commutative polynomial arithmetic.

A monomial is a sorted tuple of generators.  Even generators may repeat
(``(g, g)`` is ``g**2``); odd generators appear at most once.  A polynomial
maps monomials to nonzero ``Fraction`` coefficients.  Every product is
brought back to canonical order immediately, and the Koszul sign of the
sorting permutation is folded into the coefficient, so two polynomials are
equal iff their term dictionaries are equal.

Generators are ``Gen`` named tuples.  Tuple comparison gives the total order
used for canonical form: kind (jet < sigma < eta < u), field id, Lie index,
spacetime index, then the multi-index in graded-lex order.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, NamedTuple, Optional, Tuple

JET, SIGMA, ETA, U = 0, 1, 2, 3


class DegreeError(ValueError):
    """Raised when a degree query meets an inhomogeneous polynomial."""


class Gen(NamedTuple):
    rank: int
    field: int
    lie: int
    space: int
    order: int
    alpha: Tuple[int, ...]
    parity: int
    ghost: int
    form: int
    label: str


Monomial = Tuple[Gen, ...]
Coeff = Fraction


def sigma(i: int) -> Gen:
    return Gen(SIGMA, 0, 0, i, 0, (), 1, 0, 1, "sig")


def eta(n: int) -> Gen:
    return Gen(ETA, 0, 0, 0, 0, (), (n + 1) % 2, 0, n + 1, "eta")


def u(i: int) -> Gen:
    return Gen(U, 0, 0, i, 0, (), 0, 2, 0, "u")


def jet(field: int, lie: int, space: int, alpha: Tuple[int, ...],
        parity: int, ghost: int, label: str) -> Gen:
    alpha = tuple(alpha)
    return Gen(JET, field, lie, space, sum(alpha), alpha, parity % 2, ghost, 0, label)


@lru_cache(maxsize=None)
def shift(g: Gen, i: int) -> Gen:
    """The jet generator with multi-index ``alpha + e_i`` (``i`` is 1-based)."""
    a = list(g.alpha)
    a[i - 1] += 1
    return g._replace(alpha=tuple(a), order=g.order + 1)


def mono_mul(m1: Monomial, m2: Monomial) -> Tuple[int, Monomial]:
    """Product of canonical monomials as ``(sign, monomial)``; sign 0 means zero."""
    if not m1:
        return 1, m2
    if not m2:
        return 1, m1
    last, first = m1[-1], m2[0]
    if last < first:
        return 1, m1 + m2
    if last == first and not last.parity:
        return 1, m1 + m2
    out = []
    odd_left = sum(g.parity for g in m1)
    swaps = 0
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        a, b = m1[i], m2[j]
        if a < b:
            out.append(a)
            odd_left -= a.parity
            i += 1
        elif b < a:
            out.append(b)
            if b.parity:
                swaps += odd_left
            j += 1
        else:
            if a.parity:
                return 0, ()
            out.append(a)
            i += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return (-1 if swaps & 1 else 1), tuple(out)


def canonical(seq: Iterable[Gen]) -> Tuple[int, Monomial]:
    """Sort an arbitrary word of generators, returning ``(sign, monomial)``."""
    word = list(seq)
    odd = [g for g in word if g.parity]
    if len(set(odd)) < len(odd):
        return 0, ()
    # inversion count among odd generators by insertion into a sorted list
    swaps = 0
    seen: list = []
    for g in reversed(odd):
        swaps += bisect_right(seen, g)
        seen.insert(bisect_right(seen, g), g)
    return (-1 if swaps & 1 else 1), tuple(sorted(word))


def mono_parity(m: Monomial) -> int:
    return sum(g.parity for g in m) & 1


class GradedPolynomial:
    """Immutable exact linear combination of canonical monomials."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Dict[Monomial, Coeff]] = None):
        self.terms: Dict[Monomial, Coeff] = terms if terms is not None else {}
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c) -> "GradedPolynomial":
        c = Fraction(c)
        return cls({(): c} if c else {})

    @classmethod
    def gen(cls, g: Gen, coeff=1) -> "GradedPolynomial":
        return cls({(g,): Fraction(coeff)})

    @classmethod
    def from_terms(cls, pairs: Iterable[Tuple[Iterable[Gen], object]]) -> "GradedPolynomial":
        """Build from ``(word, coeff)`` pairs; words need not be sorted."""
        acc: Dict[Monomial, Coeff] = {}
        for word, c in pairs:
            s, m = canonical(word)
            if s:
                _acc(acc, m, s * Fraction(c))
        return cls(acc)

    # queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Coeff]]:
        return iter(self.terms.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GradedPolynomial.const(other)
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def constant_term(self) -> Coeff:
        return self.terms.get((), Fraction(0))

    def generators(self) -> set:
        return {g for m in self.terms for g in m}

    def degrees(self) -> Tuple[int, int, int]:
        """(ghost, parity, form degree) common to all terms."""
        if not self.terms:
            raise DegreeError("degrees of the zero polynomial are undefined")
        found = {_mono_degrees(m) for m in self.terms}
        if len(found) != 1:
            raise DegreeError(f"degree-mixing polynomial: {sorted(found)}")
        return found.pop()

    def parity(self) -> int:
        ps = {mono_parity(m) for m in self.terms}
        if len(ps) > 1:
            raise DegreeError("polynomial mixes parities")
        return ps.pop() if ps else 0

    def split_parity(self) -> Tuple["GradedPolynomial", "GradedPolynomial"]:
        even: Dict[Monomial, Coeff] = {}
        odd: Dict[Monomial, Coeff] = {}
        for m, c in self.terms.items():
            (odd if mono_parity(m) else even)[m] = c
        return GradedPolynomial(even), GradedPolynomial(odd)

    def filter(self, keep: Callable[[Monomial], bool]) -> "GradedPolynomial":
        return GradedPolynomial({m: c for m, c in self.terms.items() if keep(m)})

    # arithmetic -----------------------------------------------------------
    def __add__(self, other) -> "GradedPolynomial":
        other = _coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _acc(acc, m, c)
        return GradedPolynomial(acc)

    __radd__ = __add__

    def __neg__(self) -> "GradedPolynomial":
        return GradedPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "GradedPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "GradedPolynomial":
        return _coerce(other) + (-self)

    def scale(self, c) -> "GradedPolynomial":
        c = Fraction(c)
        if not c:
            return ZERO
        return GradedPolynomial({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other) -> "GradedPolynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return mul(self, other)

    def __rmul__(self, other) -> "GradedPolynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return mul(_coerce(other), self)

    def __repr__(self) -> str:
        return f"GradedPolynomial({render(self)})"

    def __str__(self) -> str:
        return render(self)


ZERO = GradedPolynomial()
ONE = GradedPolynomial.const(1)


def _coerce(x) -> GradedPolynomial:
    if isinstance(x, GradedPolynomial):
        return x
    return GradedPolynomial.const(x)


def _acc(acc: Dict[Monomial, Coeff], m: Monomial, c: Coeff) -> None:
    v = acc.get(m)
    if v is None:
        if c:
            acc[m] = c
    else:
        v += c
        if v:
            acc[m] = v
        else:
            del acc[m]


def _mono_degrees(m: Monomial) -> Tuple[int, int, int]:
    gh = par = form = 0
    for g in m:
        gh += g.ghost
        par += g.parity
        form += g.form
    return gh, par & 1, form


def mul(p: GradedPolynomial, q: GradedPolynomial) -> GradedPolynomial:
    """Graded-commutative product."""
    if not p.terms or not q.terms:
        return ZERO
    acc: Dict[Monomial, Coeff] = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            s, m = mono_mul(m1, m2)
            if s:
                _acc(acc, m, c1 * c2 if s > 0 else -(c1 * c2))
    return GradedPolynomial(acc)


def add_all(polys: Iterable[GradedPolynomial]) -> GradedPolynomial:
    acc: Dict[Monomial, Coeff] = {}
    for p in polys:
        for m, c in p.terms.items():
            _acc(acc, m, c)
    return GradedPolynomial(acc)


def product(polys: Iterable[GradedPolynomial]) -> GradedPolynomial:
    out = ONE
    for p in polys:
        out = mul(out, p)
    return out


def left_derivative_mono(m: Monomial, g: Gen) -> Tuple[int, Monomial]:
    """``d/dg`` acting from the left on a monomial: ``(factor, monomial)``.

    For odd ``g`` the factor is the Koszul sign of moving ``g`` to the front;
    for even ``g`` it is the exponent.  A factor of 0 means the result is 0.
    """
    if g.parity:
        odd_before = 0
        for k, h in enumerate(m):
            if h == g:
                return (-1 if odd_before & 1 else 1), m[:k] + m[k + 1:]
            odd_before += h.parity
        return 0, ()
    lo = None
    count = 0
    for k, h in enumerate(m):
        if h == g:
            if lo is None:
                lo = k
            count += 1
        elif lo is not None:
            break
    if not count:
        return 0, ()
    return count, m[:lo] + m[lo + 1:]


def partial_left(p: GradedPolynomial, g: Gen) -> GradedPolynomial:
    """Left graded partial derivative with respect to a generator."""
    acc: Dict[Monomial, Coeff] = {}
    for m, c in p.terms.items():
        f, rest = left_derivative_mono(m, g)
        if f:
            _acc(acc, rest, c * f)
    return GradedPolynomial(acc)


def apply_derivation(p: GradedPolynomial,
                     value: Callable[[Gen], Optional[GradedPolynomial]]) -> GradedPolynomial:
    """Apply the left derivation ``sum_g value(g) * d/dg``.

    ``value(g)`` returns the image of the generator (or ``None`` for zero).
    The derivation's parity is implicit in the parities of the images, so a
    sum of derivations of different parities is handled term by term.
    """
    acc: Dict[Monomial, Coeff] = {}
    cache: Dict[Gen, Optional[GradedPolynomial]] = {}
    for m, c in p.terms.items():
        seen = set()
        for g in m:
            if g in seen:
                continue
            seen.add(g)
            if g in cache:
                v = cache[g]
            else:
                v = cache[g] = value(g)
            if v is None or not v.terms:
                continue
            f, rest = left_derivative_mono(m, g)
            if not f:
                continue
            cf = c * f
            for vm, vc in v.terms.items():
                s, mm = mono_mul(vm, rest)
                if s:
                    _acc(acc, mm, cf * vc if s > 0 else -(cf * vc))
    return GradedPolynomial(acc)


def substitute(p: GradedPolynomial,
               image: Callable[[Gen], Optional[GradedPolynomial]]) -> GradedPolynomial:
    """Algebra map sending each generator ``g`` to ``image(g)`` (or itself if None)."""
    acc: Dict[Monomial, Coeff] = {}
    cache: Dict[Gen, GradedPolynomial] = {}
    for m, c in p.terms.items():
        out = GradedPolynomial({(): c})
        for g in m:
            if g not in cache:
                v = image(g)
                cache[g] = GradedPolynomial.gen(g) if v is None else v
            out = mul(out, cache[g])
            if not out.terms:
                break
        for mm, cc in out.terms.items():
            _acc(acc, mm, cc)
    return GradedPolynomial(acc)


# sigma / eta bookkeeping ---------------------------------------------------

def sigma_mono(I: Tuple[int, ...]) -> Monomial:
    return tuple(sigma(i) for i in I)


def sigma_poly(I: Tuple[int, ...]) -> GradedPolynomial:
    s, m = canonical(sigma(i) for i in I)
    return GradedPolynomial({m: Fraction(s)}) if s else ZERO


def sigma_count(m: Monomial) -> int:
    return sum(1 for g in m if g.rank == SIGMA)


def form_degree_mono(m: Monomial) -> int:
    return sum(g.form for g in m)


def sigma_components(p: GradedPolynomial) -> Dict[object, GradedPolynomial]:
    """Decompose ``p = sum_I sigma_I * f_I`` with the sigma factor on the left.

    Keys are increasing index tuples ``I``; terms containing eta are collected
    under the key ``"eta"`` (stored without the eta factor).
    """
    out: Dict[object, Dict[Monomial, Coeff]] = {}
    for m, c in p.terms.items():
        I = []
        rest = []
        jet_par = 0
        has_eta = False
        for g in m:
            if g.rank == SIGMA:
                I.append(g.space)
            elif g.rank == ETA:
                has_eta = True
            else:
                if g.rank == JET:
                    jet_par += g.parity
                rest.append(g)
        if has_eta:
            key = "eta"
            eta_par = sum(g.parity for g in m if g.rank == ETA)
            coeff = -c if (eta_par * jet_par) & 1 else c
        else:
            key = tuple(I)
            # jets precede sigmas in canonical order: J*S = (-1)^{|I| p(J)} S*J
            coeff = -c if (len(I) * jet_par) & 1 else c
        _acc(out.setdefault(key, {}), tuple(rest), coeff)
    return {k: GradedPolynomial(v) for k, v in out.items() if v}


def from_sigma_components(comps: Dict[object, GradedPolynomial], n: int) -> GradedPolynomial:
    parts = []
    for key, f in comps.items():
        if key == "eta":
            parts.append(mul(GradedPolynomial.gen(eta(n)), f))
        else:
            parts.append(mul(sigma_poly(key), f))
    return add_all(parts)


def field_degree_mono(m: Monomial) -> int:
    return sum(1 for g in m if g.rank == JET)


# text rendering --------------------------------------------------------------

def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_gen(g: Gen) -> str:
    if g.rank == SIGMA:
        return f"sig{g.space}"
    if g.rank == ETA:
        return "eta"
    if g.rank == U:
        return f"u{g.space}"
    alpha = "(" + ",".join(str(a) for a in g.alpha) + ")"
    if g.space:
        return f"{g.label}[i={g.space};a={g.lie};α={alpha}]"
    return f"{g.label}[a={g.lie};α={alpha}]"


def render_term(m: Monomial, c: Fraction) -> Tuple[Fraction, str]:
    sig = [g for g in m if g.rank == SIGMA]
    others = [g for g in m if g.rank != SIGMA]
    jet_par = sum(g.parity for g in others if g.rank == JET)
    if (len(sig) * jet_par) & 1:
        c = -c
    pieces = []
    if sig:
        pieces.append("*".join(_fmt_gen(g) for g in sig))
    k = 0
    while k < len(others):
        g = others[k]
        e = 1
        while k + e < len(others) and others[k + e] == g:
            e += 1
        pieces.append(_fmt_gen(g) + (f"^{e}" if e > 1 else ""))
        k += e
    return c, " * ".join(pieces)


def render(p: GradedPolynomial) -> str:
    """Deterministic text form; sigma factors are written first."""
    if not p.terms:
        return "0"
    out = []
    for m in sorted(p.terms):
        c, body = render_term(m, p.terms[m])
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if body:
            txt = body if mag == 1 else f"{_fmt_coeff(mag)} * {body}"
        else:
            txt = _fmt_coeff(mag)
        out.append((sign, txt))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, txt in out[1:]:
        s += f" {sign} {txt}"
    return s
