"""Lie algebras with an invariant inner product, over the rationals.

``f[c][a][b]`` is the structure constant ``f^c_{ab}`` (``[e_a, e_b] = f^c_{ab} e_c``)
and ``kappa[a][b]`` the inner product.  Representations are lists of square
matrices ``rho(e_a)``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product as iproduct
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

from .linalg import Matrix, det, inverse, matmul

ALGEBRA_DIR_ENV = "BVBICOMPLEX_ALGEBRA_DIR"


class InvalidLieAlgebra(ValueError):
    """An axiom of a Lie algebra with invariant inner product fails."""

    def __init__(self, axiom: str, detail: str = ""):
        self.axiom = axiom
        super().__init__(axiom + (f": {detail}" if detail else ""))


@dataclass(frozen=True)
class Representation:
    name: str
    matrices: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]

    @property
    def size(self) -> int:
        return len(self.matrices[0]) if self.matrices else 0

    def matrix(self, a: int) -> Matrix:
        return [list(r) for r in self.matrices[a]]


def _frac(x) -> Fraction:
    return Fraction(x) if not isinstance(x, str) else Fraction(x.strip())


def _freeze(m) -> Tuple:
    if isinstance(m, (list, tuple)):
        return tuple(_freeze(x) for x in m)
    return _frac(m)


@dataclass(frozen=True)
class LieAlgebraSpec:
    dim: int
    f: Tuple
    kappa: Tuple
    reps: Tuple[Representation, ...] = ()
    name: str = "custom"

    @classmethod
    def make(cls, dim, f, kappa, reps=(), name="custom", validate=True) -> "LieAlgebraSpec":
        spec = cls(dim, _freeze(f), _freeze(kappa),
                   tuple(Representation(r[0], _freeze(r[1])) if not isinstance(r, Representation)
                         else r for r in reps), name)
        if validate:
            spec.validate()
        return spec

    # structure ----------------------------------------------------------
    def sc(self, c: int, a: int, b: int) -> Fraction:
        return self.f[c][a][b]

    @cached_property
    def kappa_inv(self) -> Tuple:
        return _freeze(inverse([list(r) for r in self.kappa]))

    @cached_property
    def nonzero_f(self) -> List[Tuple[int, int, int, Fraction]]:
        """``(c, a, b, f^c_ab)`` with nonzero value."""
        d = self.dim
        return [(c, a, b, self.f[c][a][b]) for c, a, b in iproduct(range(d), repeat=3)
                if self.f[c][a][b]]

    def is_abelian(self) -> bool:
        return not self.nonzero_f

    def lowered_f(self, a: int, b: int, c: int) -> Fraction:
        """``f_{abc} = kappa_{ad} f^d_{bc}``: totally antisymmetric when kappa is invariant."""
        return sum((self.kappa[a][d] * self.f[d][b][c] for d in range(self.dim)), Fraction(0))

    # axioms -------------------------------------------------------------
    def validate(self) -> None:
        d = self.dim
        if len(self.f) != d or any(len(m) != d or any(len(r) != d for r in m) for m in self.f):
            raise InvalidLieAlgebra("shape", "f must be dim x dim x dim")
        if len(self.kappa) != d or any(len(r) != d for r in self.kappa):
            raise InvalidLieAlgebra("shape", "kappa must be dim x dim")
        for c, a, b in iproduct(range(d), repeat=3):
            if self.f[c][a][b] != -self.f[c][b][a]:
                raise InvalidLieAlgebra("bracket not antisymmetric", f"f^{c}_{a}{b}")
        for a, b, c, e in iproduct(range(d), repeat=4):
            s = sum(self.f[k][a][b] * self.f[e][k][c] + self.f[k][b][c] * self.f[e][k][a]
                    + self.f[k][c][a] * self.f[e][k][b] for k in range(d))
            if s:
                raise InvalidLieAlgebra("Jacobi identity fails", f"indices {(a, b, c, e)}")
        for a, b in iproduct(range(d), repeat=2):
            if self.kappa[a][b] != self.kappa[b][a]:
                raise InvalidLieAlgebra("kappa not symmetric", f"entry {(a, b)}")
        if det([list(r) for r in self.kappa]) == 0:
            raise InvalidLieAlgebra("kappa singular")
        for a, b, c in iproduct(range(d), repeat=3):
            v = self.lowered_f(c, a, b)
            if v != -self.lowered_f(a, c, b) or v != -self.lowered_f(b, a, c):
                raise InvalidLieAlgebra("kappa not invariant", f"indices {(a, b, c)}")
        for rep in self.reps:
            check_representation(self, rep)

    # serialization ------------------------------------------------------
    def to_json(self) -> Dict:
        s = lambda x: str(x)
        return {
            "name": self.name,
            "dim": self.dim,
            "f": [[[s(x) for x in r] for r in m] for m in self.f],
            "kappa": [[s(x) for x in r] for r in self.kappa],
            "reps": [{"name": r.name, "matrices": [[[s(x) for x in row] for row in m]
                                                   for m in r.matrices]} for r in self.reps],
        }

    @classmethod
    def from_json(cls, data: Dict, validate: bool = True) -> "LieAlgebraSpec":
        try:
            dim = int(data["dim"])
            f = data["f"]
            kappa = data["kappa"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidLieAlgebra("malformed algebra file", str(exc)) from exc
        reps = [(r["name"], r["matrices"]) for r in data.get("reps", [])]
        try:
            return cls.make(dim, f, kappa, reps, data.get("name", "custom"), validate)
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, InvalidLieAlgebra):
                raise
            raise InvalidLieAlgebra("malformed algebra file", str(exc)) from exc


def check_representation(g: LieAlgebraSpec, rep: Representation) -> None:
    d = g.dim
    if len(rep.matrices) != d:
        raise InvalidLieAlgebra("rep-not-a-representation", f"{rep.name}: need {d} matrices")
    mats = [rep.matrix(a) for a in range(d)]
    n = rep.size
    for a, b in iproduct(range(d), repeat=2):
        ab = matmul(mats[a], mats[b])
        ba = matmul(mats[b], mats[a])
        for r, s in iproduct(range(n), repeat=2):
            rhs = sum((g.f[c][a][b] * mats[c][r][s] for c in range(d)), Fraction(0))
            if ab[r][s] - ba[r][s] != rhs:
                raise InvalidLieAlgebra("rep-not-a-representation", f"{rep.name}: [{a},{b}]")


# built-in algebras -----------------------------------------------------------

def _zeros(d):
    return [[[0] * d for _ in range(d)] for _ in range(d)]


def _identity(d):
    return [[int(i == j) for j in range(d)] for i in range(d)]


def adjoint_matrices(f, d) -> List:
    """``ad(e_a)_{cb} = f^c_{ab}``."""
    return [[[f[c][a][b] for b in range(d)] for c in range(d)] for a in range(d)]


def abelian(d: int) -> LieAlgebraSpec:
    return LieAlgebraSpec.make(d, _zeros(d), _identity(d),
                               [("adjoint", adjoint_matrices(_zeros(d), d))], f"abelian{d}")


def so3() -> LieAlgebraSpec:
    f = _zeros(3)
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        f[c][a][b] = 1
        f[c][b][a] = -1
    adj = adjoint_matrices(f, 3)
    return LieAlgebraSpec.make(3, f, _identity(3), [("adjoint", adj), ("defining", adj)], "so3")


def sl2() -> LieAlgebraSpec:
    """Basis (e, h, f) with [h,e] = 2e, [h,f] = -2f, [e,f] = h; kappa = Killing/4 = trace form."""
    E, H, F = 0, 1, 2
    f = _zeros(3)

    def put(a, b, c, v):
        f[c][a][b] = v
        f[c][b][a] = -v

    put(H, E, E, 2)
    put(H, F, F, -2)
    put(E, F, H, 1)
    kappa = [[0, 0, 1], [0, 2, 0], [1, 0, 0]]
    defining = [[[0, 1], [0, 0]], [[1, 0], [0, -1]], [[0, 0], [1, 0]]]
    return LieAlgebraSpec.make(3, f, kappa, [("adjoint", adjoint_matrices(f, 3)),
                                             ("defining", defining)], "sl2")


def direct_sum(g: LieAlgebraSpec, h: LieAlgebraSpec) -> LieAlgebraSpec:
    d = g.dim + h.dim
    f = _zeros(d)
    kappa = [[0] * d for _ in range(d)]
    for off, alg in ((0, g), (g.dim, h)):
        for c, a, b, v in alg.nonzero_f:
            f[off + c][off + a][off + b] = v
        for a, b in iproduct(range(alg.dim), repeat=2):
            kappa[off + a][off + b] = alg.kappa[a][b]
    return LieAlgebraSpec.make(d, f, kappa, [("adjoint", adjoint_matrices(f, d))],
                               f"{g.name}+{h.name}")


BUILTINS = {
    "abelian1": lambda: abelian(1),
    "abelian3": lambda: abelian(3),
    "so3": so3,
    "sl2": sl2,
    "so3xso3": lambda: direct_sum(so3(), so3()),
}


def load_algebra(name_or_path: str) -> LieAlgebraSpec:
    """Resolve a builtin name (optionally ``builtin:``-prefixed) or a JSON file.

    Relative paths are tried as given, then under ``$BVBICOMPLEX_ALGEBRA_DIR``.
    """
    key = name_or_path[len("builtin:"):] if name_or_path.startswith("builtin:") else name_or_path
    if key in BUILTINS:
        return BUILTINS[key]()
    path = Path(name_or_path)
    if not path.exists() and os.environ.get(ALGEBRA_DIR_ENV):
        alt = Path(os.environ[ALGEBRA_DIR_ENV]) / name_or_path
        if alt.exists():
            path = alt
    if not path.exists():
        raise FileNotFoundError(f"unknown algebra {name_or_path!r}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InvalidLieAlgebra("malformed algebra file", str(exc)) from exc
    return LieAlgebraSpec.from_json(data)
