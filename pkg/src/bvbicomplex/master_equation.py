"""Master equations, their lifts to the bicomplex, and the covariant extension.

``S`` solves the master equation in the bicomplex when ``dS + 1/2 (S, S) = 0``.
A covariant theory adds even formal variables ``u^1..u^n`` of ghost 2 and
asks ``d_u S_u + 1/2 (S_u, S_u) = D_u`` with ``d_u = d + u^i iota_i``.  The
operators ``iota_i`` and densities ``D_i`` come in matched pairs, carried by a
``CovariantStructure``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .bicomplex import BiForm, form_degree_part, homotopy_H, horizontal_d, is_total_derivative
from .brackets import apply_X, homotopy_C, iota_generic, soloviev
from .graded_algebra import ZERO, GradedPolynomial, add_all, render
from .jet_calculus import JetContext, total_derivative

HALF = Fraction(1, 2)
UIndex = Tuple[int, ...]


class MasterEquationViolation(ValueError):
    """``1/2 ∫(S0, S0)`` is not zero, so no lift exists."""


class NotACocycle(ValueError):
    """The twisting density is not ``s``-closed."""


class ObstructionNonzero(ValueError):
    """``(rho, Gamma rho)`` does not vanish."""


# u-polynomials ------------------------------------------------------------------

@dataclass(frozen=True)
class UPolynomial:
    """A polynomial in the commuting variables ``u^1..u^n`` with BiForm coefficients.

    ``coeffs`` maps an exponent vector to its coefficient.  Ghost number is
    ``ghost(coefficient) + 2 |exponent|``.
    """

    n: int
    coeffs: Dict[UIndex, BiForm] = field(default_factory=dict)

    def __post_init__(self):
        for k in list(self.coeffs):
            if len(k) != self.n:
                raise ValueError(f"u-exponent {k} has wrong length")
            if not self.coeffs[k].terms:
                del self.coeffs[k]

    @staticmethod
    def unit(n: int, i: int) -> UIndex:
        return tuple(int(j == i) for j in range(1, n + 1))

    @classmethod
    def constant(cls, n: int, S: BiForm) -> "UPolynomial":
        return cls(n, {(0,) * n: S})

    @classmethod
    def affine(cls, n: int, S: BiForm, G: Sequence[BiForm]) -> "UPolynomial":
        """``S + u^i G_i``."""
        coeffs = {(0,) * n: S}
        for i, g in enumerate(G, start=1):
            coeffs[cls.unit(n, i)] = coeffs.get(cls.unit(n, i), ZERO) + g
        return cls(n, coeffs)

    def component(self, k: UIndex) -> BiForm:
        return self.coeffs.get(tuple(k), ZERO)

    def at_zero(self) -> BiForm:
        return self.component((0,) * self.n)

    def is_affine(self) -> bool:
        return all(sum(k) <= 1 for k in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def map(self, op: Callable[[BiForm], BiForm]) -> "UPolynomial":
        return UPolynomial(self.n, {k: op(v) for k, v in self.coeffs.items()})

    def __add__(self, other: "UPolynomial") -> "UPolynomial":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return UPolynomial(self.n, out)

    def __neg__(self) -> "UPolynomial":
        return self.map(lambda v: -v)

    def __sub__(self, other: "UPolynomial") -> "UPolynomial":
        return self + (-other)

    def ghost_numbers(self) -> set:
        return {v.degrees()[0] + 2 * sum(k) for k, v in self.coeffs.items()}

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            u = "".join(f"u{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(k) if e)
            parts.append(f"[{u or '1'}] {render(self.coeffs[k])}")
        return "\n".join(parts)


def _add_index(a: UIndex, b: UIndex) -> UIndex:
    return tuple(x + y for x, y in zip(a, b))


def u_bracket(ctx: JetContext, F: UPolynomial, G: UPolynomial) -> UPolynomial:
    """Soloviev bracket extended u-bilinearly (the u's are even constants)."""
    out: Dict[UIndex, List[BiForm]] = {}
    for a, f in F.coeffs.items():
        for b, g in G.coeffs.items():
            out.setdefault(_add_index(a, b), []).append(soloviev(ctx, f, g))
    return UPolynomial(F.n, {k: add_all(v) for k, v in out.items()})


# covariant structures -----------------------------------------------------------

@dataclass(frozen=True)
class CovariantStructure:
    """Matched ``iota_i`` and ``D_i`` with ``d iota_i + iota_i d + ad(D_i) = 0``.

    ``orientation`` is the sign with which the constant ghosts enter:
    ``d_u = d + orientation u^i iota_i`` and ``D_u = orientation u^i D_i``.
    Flipping it is the substitution ``u -> -u``.
    """

    iota: Callable[[int, BiForm], BiForm]
    D: Tuple[BiForm, ...]
    orientation: int = 1

    def iota_u(self, i: int, f: BiForm) -> BiForm:
        """The operator multiplying ``u^i`` in ``d_u``."""
        v = self.iota(i, f)
        return v if self.orientation > 0 else -v

    def D_u(self, i: int) -> BiForm:
        return self.D[i - 1] if self.orientation > 0 else -self.D[i - 1]


def generic_structure(ctx: JetContext) -> CovariantStructure:
    """``D_i = <d_i x^a, xi_a>`` with ``iota_i = sigma_i (1 - sum xi d/d xi)``."""
    D = []
    for i in range(1, ctx.n + 1):
        parts = []
        for x in ctx.slots(antifields=False):
            xv = GradedPolynomial.gen(ctx.gen(x))
            xi = GradedPolynomial.gen(ctx.gen(ctx.partner_slot(x)))
            parts.append(total_derivative(ctx, i, xv) * xi)
        D.append(add_all(parts))
    return CovariantStructure(lambda i, f: iota_generic(ctx, i, f), tuple(D))


def d_u(ctx: JetContext, cov: CovariantStructure, S: UPolynomial) -> UPolynomial:
    """``(d + u^i iota_i) S`` (with the structure's orientation)."""
    out: Dict[UIndex, List[BiForm]] = {}
    for k, v in S.coeffs.items():
        out.setdefault(k, []).append(horizontal_d(ctx, v))
        for i in range(1, ctx.n + 1):
            out.setdefault(_add_index(k, UPolynomial.unit(ctx.n, i)), []).append(cov.iota_u(i, v))
    return UPolynomial(S.n, {k: add_all(v) for k, v in out.items()})


# certificates ------------------------------------------------------------------

@dataclass
class MaurerCartanCertificate:
    element: object
    residual: object
    passed: bool
    components: Dict[str, bool] = field(default_factory=dict)

    def to_json(self) -> Dict:
        def show(x):
            return x.render() if isinstance(x, UPolynomial) else render(x)

        return {
            "pass": self.passed,
            "element": show(self.element),
            "residual": show(self.residual),
            "components": dict(self.components),
        }


def master_residual(ctx: JetContext, S: BiForm) -> BiForm:
    return horizontal_d(ctx, S) + soloviev(ctx, S, S).scale(HALF)


def check_master(ctx: JetContext, S: BiForm) -> MaurerCartanCertificate:
    """``dS + 1/2 (S, S)``, exactly."""
    r = master_residual(ctx, S)
    return MaurerCartanCertificate(S, r, not r.terms)


def check_covariant_master(ctx: JetContext, cov: CovariantStructure,
                           S_u: UPolynomial) -> MaurerCartanCertificate:
    """Residual of ``d_u S_u + 1/2 (S_u, S_u) - D_u``.

    For affine ``S_u = S + u^i G_i`` the component equations
    ``dG_i + iota_i S + (S, G_i) = D_i`` and
    ``iota_i G_j + iota_j G_i + (G_i, G_j) = 0`` are reported as well.
    """
    n = ctx.n
    D_u = UPolynomial(n, {UPolynomial.unit(n, i): cov.D_u(i) for i in range(1, n + 1)})
    half = u_bracket(ctx, S_u, S_u).map(lambda v: v.scale(HALF))
    r = d_u(ctx, cov, S_u) + half - D_u
    cert = MaurerCartanCertificate(S_u, r, r.is_zero())
    if S_u.is_affine():
        S = S_u.at_zero()
        G = [S_u.component(UPolynomial.unit(n, i)) for i in range(1, n + 1)]
        cert.components["master"] = not master_residual(ctx, S).terms
        for i in range(1, n + 1):
            lhs = horizontal_d(ctx, G[i - 1]) + cov.iota_u(i, S) + soloviev(ctx, S, G[i - 1])
            cert.components[f"G{i}"] = not (lhs - cov.D_u(i)).terms
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                lhs = (cov.iota_u(i, G[j - 1]) + cov.iota_u(j, G[i - 1])
                       + soloviev(ctx, G[i - 1], G[j - 1]))
                cert.components[f"G{i}G{j}"] = not lhs.terms
    return cert


# the lift ---------------------------------------------------------------------

def lift_action(ctx: JetContext, S0: BiForm) -> BiForm:
    """Lift a form-degree-0 solution of ``1/2 ∫(S0, S0) = 0`` to ``S`` with ``dS + 1/2(S,S) = 0``.

    ``S_k = -1/2 sum_{j} H (S_j, S_{k-1-j})``.  Each ``S_k`` has form degree
    ``k``; the recursion stops once ``k > n + 1``.
    """
    if form_degree_part(S0, 0) != S0:
        raise ValueError("S0 must have form degree 0")
    if horizontal_d(ctx, S0).terms:
        raise ValueError("S0 must be d-closed")
    sq = soloviev(ctx, S0, S0)
    if sq.terms and not is_total_derivative(ctx, sq):
        raise MasterEquationViolation("1/2 ∫(S0, S0) is not zero")
    pieces = [S0]
    for k in range(1, ctx.n + 2):
        src = add_all(soloviev(ctx, pieces[j], pieces[k - 1 - j]) for j in range(k))
        Sk = homotopy_H(ctx, src).scale(-HALF)
        pieces.append(Sk)
    S = add_all(pieces)
    cert = check_master(ctx, S)
    if not cert.passed:
        raise MasterEquationViolation("lift did not close: " + render(cert.residual))
    return S


# Gamma operators and the twist ------------------------------------------------

def gamma_op(ctx: JetContext, cov: CovariantStructure, G: Sequence[BiForm], i: int,
             f: BiForm) -> BiForm:
    """``Gamma_i f = iota_i f + (G_i, f)``, the ``u^i`` part of ``d_u + ad(S_u)``."""
    return cov.iota_u(i, f) + soloviev(ctx, G[i - 1], f)


def gamma_all(ctx: JetContext, cov: CovariantStructure, G: Sequence[BiForm], f: BiForm) -> BiForm:
    """``Gamma_1 ... Gamma_n f`` (``Gamma_n`` acts first)."""
    for i in range(ctx.n, 0, -1):
        f = gamma_op(ctx, cov, G, i, f)
    return f


def aksz_twist(ctx: JetContext, cov: CovariantStructure, S_u: UPolynomial,
               rho: BiForm) -> UPolynomial:
    """``S_u + Gamma rho`` for an ``s``-cocycle ``rho`` with ``(rho, Gamma rho) = 0``."""
    if not S_u.is_affine():
        raise ValueError("the twist needs an affine S_u = S + u^i G_i")
    n = ctx.n
    S = S_u.at_zero()
    G = [S_u.component(UPolynomial.unit(n, i)) for i in range(1, n + 1)]
    if soloviev(ctx, S, rho).terms:
        raise NotACocycle("s(rho) = (S, rho) is not zero")
    g_rho = gamma_all(ctx, cov, G, rho)
    if soloviev(ctx, rho, g_rho).terms:
        raise ObstructionNonzero("(rho, Gamma rho) is not zero")
    return S_u + UPolynomial.constant(n, g_rho)


# the alpha intertwiner -------------------------------------------------------

def split_by_form_degree(ctx: JetContext, S: BiForm) -> List[BiForm]:
    return [form_degree_part(S, k) for k in range(ctx.n + 1)]


def tilde_s(ctx: JetContext, S: BiForm, g: BiForm, full: bool = False) -> BiForm:
    """The evolutionary differential ``X_{S_0} g``; with ``full=True`` the sum of all ``X_{sigma_I S_I}``.

    Only the sigma-free part commutes with ``d``: for ``I`` non-empty,
    ``[d, X_{sigma_I S_I}]`` picks up total derivatives, and ``(d + X_S)^2``
    is then nonzero as soon as ``S`` has higher form-degree parts.
    """
    return apply_X(ctx, S if full else form_degree_part(S, 0), g)


def tilde_square(ctx: JetContext, S: BiForm, g: BiForm, full: bool = False) -> BiForm:
    """``(d + tilde s)^2 g``; zero is necessary for an intertwiner to exist."""
    q = lambda x: horizontal_d(ctx, x) + tilde_s(ctx, S, x, full)
    return q(q(g))


def alpha_intertwiner(ctx: JetContext, S: BiForm, f: BiForm,
                      return_pieces: bool = False, full: bool = False):
    """``alpha(f) = f + sum_k alpha_k(f)`` with ``(d + tilde s) alpha = alpha (d + ad S)``.

    ``alpha_1 = C(S_0, -)`` and for ``k >= 2``
    ``alpha_k = -H sum_{i=0}^{k-1} (tilde s_i alpha_{k-1-i} - alpha_{k-1-i} ad(S_i))``,
    evaluated on the argument: operator compositions are applied right to left.
    ``tilde s_0 = X_{S_0}`` and ``tilde s_i = 0`` for ``i > 0`` unless ``full``.
    """
    n = ctx.n
    Ss = split_by_form_degree(ctx, S)

    def s(i, g):
        return soloviev(ctx, Ss[i], g) if i < len(Ss) else ZERO

    def st(i, g):
        if i >= len(Ss) or (i > 0 and not full):
            return ZERO
        return apply_X(ctx, Ss[i], g)

    # alpha_k applied to words w = s_{j1} ... s_{jm} f, memoized by (k, word)
    cache: Dict[Tuple[int, Tuple[int, ...]], BiForm] = {}
    words: Dict[Tuple[int, ...], BiForm] = {(): f}

    def word(w: Tuple[int, ...]) -> BiForm:
        if w not in words:
            words[w] = s(w[0], word(w[1:]))
        return words[w]

    def alpha(k: int, w: Tuple[int, ...]) -> BiForm:
        key = (k, w)
        if key in cache:
            return cache[key]
        g = word(w)
        if k == 0:
            out = g
        elif not g.terms:
            out = ZERO
        elif k == 1:
            out = homotopy_C(ctx, Ss[0], g)
        else:
            acc = []
            for i in range(k):
                acc.append(st(i, alpha(k - 1 - i, w)))
                acc.append(-alpha(k - 1 - i, (i,) + w))
            out = -homotopy_H(ctx, add_all(acc))
        cache[key] = out
        return out

    pieces = [alpha(k, ()) for k in range(n + 2)]
    total = add_all(pieces)
    return (total, pieces) if return_pieces else total


def alpha_residual(ctx: JetContext, S: BiForm, f: BiForm, full: bool = False) -> BiForm:
    """``(d + tilde s) alpha(f) - alpha((d + ad S) f)``."""
    af = alpha_intertwiner(ctx, S, f, full=full)
    lhs = horizontal_d(ctx, af) + tilde_s(ctx, S, af, full)
    rhs = alpha_intertwiner(ctx, S, horizontal_d(ctx, f) + soloviev(ctx, S, f), full=full)
    return lhs - rhs
