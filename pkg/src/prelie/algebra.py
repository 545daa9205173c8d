"""Structure-constant algebras, identity checkers, homomorphisms and triples.

Convention: ``c[i][j][k]`` is the coefficient of ``e_k`` in ``e_i . e_j``
(left factor, right factor, output), with 0-based indices internally.
Counterexamples in verdicts are reported with 1-based indices, matching the
JSON file format.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    FlavorMismatch,
    IndexOutOfRange,
    NotCommAssoc,
    NotHomomorphism,
    NotLie,
    NotPreLie,
    ShapeMismatch,
)
from .linalg import ZERO, Mat, Vector, is_zero_vec, unit_vec, vsub


class Flavor(str, enum.Enum):
    PRELIE = "prelie"
    LIE = "lie"
    COMMASSOC = "commassoc"
    UNCHECKED = "unchecked"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a checker: truthy on pass, otherwise carries a counterexample."""

    ok: bool
    reason: str = ""
    witness: tuple | None = None
    residual: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls) -> "Verdict":
        return cls(True)

    def as_dict(self) -> dict:
        from .linalg import format_rational

        d: dict = {"pass": self.ok}
        if self.reason:
            d["reason"] = self.reason
        if self.witness is not None:
            d["witness"] = list(self.witness)
        if self.residual is not None:
            d["residual"] = [format_rational(x) for x in self.residual]
        return d


def _tensor(c, dim: int) -> tuple:
    t = tuple(tuple(tuple(Fraction(x) for x in c[i][j]) for j in range(dim)) for i in range(dim))
    for i in range(dim):
        for j in range(dim):
            if len(t[i][j]) != dim:
                raise ShapeMismatch("structure tensor must be dim x dim x dim")
    return t


@dataclass(frozen=True)
class Algebra:
    dim: int
    c: tuple
    flavor: Flavor = Flavor.UNCHECKED
    basis_names: tuple = ()

    def __post_init__(self):
        if len(self.c) != self.dim or any(len(row) != self.dim for row in self.c):
            raise ShapeMismatch("structure tensor must be dim x dim x dim")
        object.__setattr__(self, "c", _tensor(self.c, self.dim))
        object.__setattr__(self, "flavor", Flavor(self.flavor))
        names = tuple(self.basis_names) or tuple(f"e{i + 1}" for i in range(self.dim))
        if len(names) != self.dim:
            raise ShapeMismatch("basis_names length must equal dim")
        object.__setattr__(self, "basis_names", names)

    @classmethod
    def from_products(cls, dim: int, products: dict, flavor=Flavor.UNCHECKED, basis_names=()) -> "Algebra":
        """Build from ``{(i, j): {k: coeff}}`` with 0-based indices; omitted products are zero."""
        c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), out in products.items():
            for k, v in out.items():
                c[i][j][k] = Fraction(v)
        return cls(dim, c, flavor, basis_names)

    @classmethod
    def zero(cls, dim: int, flavor=Flavor.PRELIE) -> "Algebra":
        return cls.from_products(dim, {}, flavor)

    def with_flavor(self, flavor) -> "Algebra":
        return Algebra(self.dim, self.c, flavor, self.basis_names)

    def basis_product(self, i: int, j: int) -> Vector:
        return self.c[i][j]

    def mul(self, u: Sequence, v: Sequence) -> Vector:
        d = self.dim
        out = [ZERO] * d
        for i in range(d):
            if not u[i]:
                continue
            for j in range(d):
                if not v[j]:
                    continue
                s = u[i] * v[j]
                cij = self.c[i][j]
                for k in range(d):
                    if cij[k]:
                        out[k] += s * cij[k]
        return tuple(out)

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        return vsub(self.mul(u, v), self.mul(v, u))

    def e(self, i: int) -> Vector:
        return unit_vec(self.dim, i)

    def is_abelian(self) -> bool:
        return not any(any(any(x) for x in row) for row in self.c)


def _check_index(a: Algebra, i: int):
    if not 0 <= i < a.dim:
        raise IndexOutOfRange(f"basis index {i} outside 0..{a.dim - 1}")


def left_mul(a: Algebra, i: int) -> Mat:
    """Matrix of ``y -> e_i . y``."""
    _check_index(a, i)
    d = a.dim
    return Mat.from_columns([a.c[i][j] for j in range(d)], d)


def right_mul(a: Algebra, i: int) -> Mat:
    """Matrix of ``y -> y . e_i``."""
    _check_index(a, i)
    d = a.dim
    return Mat.from_columns([a.c[j][i] for j in range(d)], d)


def left_mul_vec(a: Algebra, x: Sequence) -> Mat:
    d = a.dim
    return Mat.from_columns([a.mul(x, a.e(j)) for j in range(d)], d)


def right_mul_vec(a: Algebra, x: Sequence) -> Mat:
    d = a.dim
    return Mat.from_columns([a.mul(a.e(j), x) for j in range(d)], d)


def _one_based(*idx: int) -> tuple:
    return tuple(i + 1 for i in idx)


def associator(a: Algebra, x, y, z) -> Vector:
    return vsub(a.mul(a.mul(x, y), z), a.mul(x, a.mul(y, z)))


def check_pre_lie(a: Algebra) -> Verdict:
    """Left-symmetry of the associator on every basis triple."""
    for i, j, k in itertools.product(range(a.dim), repeat=3):
        if j < i:
            continue
        x, y, z = a.e(i), a.e(j), a.e(k)
        diff = vsub(associator(a, x, y, z), associator(a, y, x, z))
        if not is_zero_vec(diff):
            return Verdict(False, "PreLieIdentity", _one_based(i, j, k), diff)
    return Verdict.passed()


def check_antisymmetry(a: Algebra) -> Verdict:
    for i in range(a.dim):
        for j in range(i, a.dim):
            s = tuple(p + q for p, q in zip(a.c[i][j], a.c[j][i]))
            if not is_zero_vec(s):
                return Verdict(False, "Antisymmetry", _one_based(i, j), s)
    return Verdict.passed()


def check_jacobi(a: Algebra) -> Verdict:
    """Antisymmetry first, then the Jacobi identity, reading ``c`` as a bracket."""
    anti = check_antisymmetry(a)
    if not anti:
        return anti
    for i, j, k in itertools.combinations(range(a.dim), 3):
        x, y, z = a.e(i), a.e(j), a.e(k)
        s = [ZERO] * a.dim
        for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
            t = a.mul(u, a.mul(v, w))
            s = [p + q for p, q in zip(s, t)]
        if any(s):
            return Verdict(False, "Jacobi", _one_based(i, j, k), tuple(s))
    return Verdict.passed()


def check_comm_assoc(a: Algebra) -> Verdict:
    d = a.dim
    for i in range(d):
        for j in range(i + 1, d):
            diff = vsub(a.c[i][j], a.c[j][i])
            if not is_zero_vec(diff):
                return Verdict(False, "Commutativity", _one_based(i, j), diff)
    for i, j, k in itertools.product(range(d), repeat=3):
        diff = associator(a, a.e(i), a.e(j), a.e(k))
        if not is_zero_vec(diff):
            return Verdict(False, "Associativity", _one_based(i, j, k), diff)
    return Verdict.passed()


def check_flavor(a: Algebra) -> Verdict:
    if a.flavor is Flavor.PRELIE:
        return check_pre_lie(a)
    if a.flavor is Flavor.LIE:
        return check_jacobi(a)
    if a.flavor is Flavor.COMMASSOC:
        return check_comm_assoc(a)
    return Verdict.passed()


def as_pre_lie(a: Algebra) -> Algebra:
    """Validate and tag ``a`` as pre-Lie; raises NotPreLie with the counterexample."""
    v = check_pre_lie(a)
    if not v:
        raise NotPreLie(f"pre-Lie identity fails at {v.witness}", verdict=v)
    return a if a.flavor is Flavor.PRELIE else a.with_flavor(Flavor.PRELIE)


def as_lie(a: Algebra) -> Algebra:
    v = check_jacobi(a)
    if not v:
        raise NotLie(f"{v.reason} fails at {v.witness}", verdict=v)
    return a if a.flavor is Flavor.LIE else a.with_flavor(Flavor.LIE)


def as_comm_assoc(a: Algebra) -> Algebra:
    v = check_comm_assoc(a)
    if not v:
        raise NotCommAssoc(f"{v.reason} fails at {v.witness}", verdict=v)
    return a if a.flavor is Flavor.COMMASSOC else a.with_flavor(Flavor.COMMASSOC)


def sub_adjacent(a: Algebra) -> Algebra:
    """Commutator Lie algebra of a pre-Lie algebra."""
    as_pre_lie(a)
    d = a.dim
    c = [[vsub(a.c[i][j], a.c[j][i]) for j in range(d)] for i in range(d)]
    return Algebra(d, c, Flavor.LIE, a.basis_names)


@dataclass(frozen=True)
class LinearMap:
    """A linear map between algebras; ``matrix`` is target.dim x source.dim."""

    source: Algebra
    target: Algebra
    matrix: Mat

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ShapeMismatch(
                f"map matrix has shape {self.matrix.shape}, expected {(self.target.dim, self.source.dim)}"
            )

    def __call__(self, v: Sequence) -> Vector:
        return self.matrix.apply(v)


def _homomorphism_verdict(g: Algebra, h: Algebra, phi: Mat) -> Verdict:
    if phi.shape != (h.dim, g.dim):
        raise ShapeMismatch(f"map matrix has shape {phi.shape}, expected {(h.dim, g.dim)}")
    cols = phi.columns()
    for i in range(g.dim):
        for j in range(g.dim):
            lhs = phi.apply(g.c[i][j])
            rhs = h.mul(cols[i], cols[j])
            diff = vsub(lhs, rhs)
            if not is_zero_vec(diff):
                return Verdict(False, "Homomorphism", _one_based(i, j), diff)
    return Verdict.passed()


_COMPATIBLE = {Flavor.PRELIE, Flavor.LIE}


def check_homomorphism(phi: LinearMap) -> Verdict:
    """``phi(e_i . e_j) == phi(e_i) . phi(e_j)`` on every basis pair."""
    s, t = phi.source.flavor, phi.target.flavor
    if s != t or s not in _COMPATIBLE:
        if not (Flavor.UNCHECKED in (s, t) and {s, t} - {Flavor.UNCHECKED} <= _COMPATIBLE):
            raise FlavorMismatch(f"homomorphism between {s.value} and {t.value} algebras")
    return _homomorphism_verdict(phi.source, phi.target, phi.matrix)


@dataclass(frozen=True)
class MorphismTriple:
    """Two pre-Lie algebras with a verified homomorphism ``phi: g -> h``."""

    g: Algebra
    h: Algebra
    phi: Mat

    def __post_init__(self):
        object.__setattr__(self, "g", as_pre_lie(self.g))
        object.__setattr__(self, "h", as_pre_lie(self.h))
        v = _homomorphism_verdict(self.g, self.h, self.phi)
        if not v:
            raise NotHomomorphism(f"phi is not a homomorphism at {v.witness}", verdict=v)

    @property
    def phi_map(self) -> LinearMap:
        return LinearMap(self.g, self.h, self.phi)

    @classmethod
    def identity(cls, a: Algebra) -> "MorphismTriple":
        return cls(a, a, Mat.identity(a.dim))

    @classmethod
    def zero(cls, g: Algebra, h: Algebra) -> "MorphismTriple":
        return cls(g, h, Mat.zeros(h.dim, g.dim))
