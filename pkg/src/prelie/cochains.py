"""Cochain spaces and coboundary matrices.

Pre-Lie cochains of degree n live in Hom(wedge^{n-1} g (x) g, V).  A basis
element is a triple ``(I, j, v)``: a strictly increasing (n-1)-tuple ``I`` of
algebra indices for the antisymmetric slots, an index ``j`` for the last slot,
and an output coordinate ``v``.  Chevalley-Eilenberg cochains of degree n in
Hom(wedge^n g, W) use pairs ``(I, v)``.  Both are ordered lexicographically,
so a CE basis element ``(I, (j, v))`` with values in Hom(g, V) and the pre-Lie
basis element ``(I, j, v)`` sit at the same position.

Coboundary matrices are assembled row by row: each row is the coefficient
vector of the differential evaluated at one codomain basis tuple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .algebra import Algebra, Flavor
from .errors import ArityMismatch, NotAComplex, ResourceLimit, ShapeMismatch
from .linalg import ZERO, Mat, QuotientBasis, Vector, nullspace_basis, rank
from .representations import LieRepresentation, Representation

DEFAULT_SIZE_LIMIT = 10**6


def sort_sign(indices: Sequence[int]) -> tuple[int, tuple] | None:
    """Sign of the permutation sorting ``indices`` and the sorted tuple.

    Returns None when an index repeats (the antisymmetric value is zero).
    """
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return None
    sign = 1
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if idx[a] > idx[b]:
                sign = -sign
    return sign, tuple(sorted(idx))


def _guard(dim: int, size_limit: int):
    if dim > size_limit:
        raise ResourceLimit(f"cochain space of dimension {dim} exceeds the size limit {size_limit}")


class _WedgeIndex:
    """Position of increasing k-subsets of range(d) in lexicographic order."""

    def __init__(self, d: int, k: int):
        self.subsets = list(itertools.combinations(range(d), k)) if k >= 0 else []
        self.pos = {s: i for i, s in enumerate(self.subsets)}

    def __len__(self):
        return len(self.subsets)


@dataclass(frozen=True)
class PreLieCochainSpace:
    degree: int
    algebra_dim: int
    space_dim: int
    size_limit: int = DEFAULT_SIZE_LIMIT
    _wedge: _WedgeIndex = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("pre-Lie cochains start in degree 1")
        _guard(self.dim, self.size_limit)
        object.__setattr__(self, "_wedge", _WedgeIndex(self.algebra_dim, self.degree - 1))

    @classmethod
    def of(cls, degree: int, rep: Representation, size_limit: int = DEFAULT_SIZE_LIMIT) -> "PreLieCochainSpace":
        return cls(degree, rep.algebra.dim, rep.space_dim, size_limit)

    @property
    def dim(self) -> int:
        d = self.algebra_dim
        return comb(d, self.degree - 1) * d * self.space_dim

    @property
    def arity(self) -> int:
        return self.degree

    def index(self, wedge: tuple, j: int, v: int) -> int:
        return (self._wedge.pos[wedge] * self.algebra_dim + j) * self.space_dim + v

    def slot(self, wedge: Sequence[int], j: int) -> tuple[int, int] | None:
        """(sign, base) with f(e_wedge..., e_j)_v = sign * coords[base + v]."""
        s = sort_sign(wedge)
        if s is None:
            return None
        sign, key = s
        return sign, self.index(key, j, 0)

    def basis(self) -> list[tuple]:
        d, m = self.algebra_dim, self.space_dim
        return [(w, j, v) for w in self._wedge.subsets for j in range(d) for v in range(m)]

    def tuples(self):
        """Basis argument tuples (wedge, last) in order."""
        return ((w, j) for w in self._wedge.subsets for j in range(self.algebra_dim))


@dataclass(frozen=True)
class CECochainSpace:
    degree: int
    algebra_dim: int
    space_dim: int
    size_limit: int = DEFAULT_SIZE_LIMIT
    _wedge: _WedgeIndex = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("CE cochains start in degree 0")
        _guard(self.dim, self.size_limit)
        object.__setattr__(self, "_wedge", _WedgeIndex(self.algebra_dim, self.degree))

    @classmethod
    def of(cls, degree: int, rep: LieRepresentation, size_limit: int = DEFAULT_SIZE_LIMIT) -> "CECochainSpace":
        return cls(degree, rep.algebra.dim, rep.space_dim, size_limit)

    @property
    def dim(self) -> int:
        return comb(self.algebra_dim, self.degree) * self.space_dim

    @property
    def arity(self) -> int:
        return self.degree

    def index(self, wedge: tuple, v: int) -> int:
        return self._wedge.pos[wedge] * self.space_dim + v

    def slot(self, wedge: Sequence[int]) -> tuple[int, int] | None:
        s = sort_sign(wedge)
        if s is None:
            return None
        sign, key = s
        return sign, self.index(key, 0)

    def basis(self) -> list[tuple]:
        return [(w, v) for w in self._wedge.subsets for v in range(self.space_dim)]

    def wedges(self) -> list[tuple]:
        """Increasing index tuples of the antisymmetric arguments, in order."""
        return self._wedge.subsets


@dataclass(frozen=True)
class Cochain:
    space: PreLieCochainSpace | CECochainSpace
    coords: Vector

    def __post_init__(self):
        if len(self.coords) != self.space.dim:
            raise ShapeMismatch(f"{len(self.coords)} coordinates for a space of dimension {self.space.dim}")


def evaluate(f: Cochain, args: Sequence[Sequence]) -> Vector:
    """Value of a cochain on arbitrary vectors, by multilinear expansion."""
    sp = f.space
    if len(args) != sp.arity:
        raise ArityMismatch(f"degree-{sp.degree} cochain takes {sp.arity} arguments, got {len(args)}")
    m = sp.space_dim
    out = [ZERO] * m
    supports = [[(i, a) for i, a in enumerate(arg) if a] for arg in args]
    for choice in itertools.product(*supports):
        coeff = 1
        for _, a in choice:
            coeff *= a
        idx = [i for i, _ in choice]
        if isinstance(sp, PreLieCochainSpace):
            s = sp.slot(idx[:-1], idx[-1])
        else:
            s = sp.slot(idx)
        if s is None:
            continue
        sign, base = s
        for v in range(m):
            x = f.coords[base + v]
            if x:
                out[v] += sign * coeff * x
    return tuple(out)


def lie_bracket_tensor(a: Algebra) -> tuple:
    """Bracket structure constants: the tensor itself for Lie algebras,
    commutators otherwise."""
    if a.flavor is Flavor.LIE:
        return a.c
    d = a.dim
    return tuple(tuple(tuple(a.c[i][j][k] - a.c[j][i][k] for k in range(d)) for j in range(d)) for i in range(d))


def prelie_d_matrix(n: int, rep: Representation, size_limit: int = DEFAULT_SIZE_LIMIT) -> Mat:
    """Matrix of the pre-Lie coboundary C^n -> C^{n+1} for ``rep``.

    For x_1..x_{n+1}:
        sum_i (-1)^{i+1} rho(x_i) f(..^x_i.., x_{n+1})
      + sum_i (-1)^{i+1} mu(x_{n+1}) f(..^x_i.., x_n, x_i)
      - sum_i (-1)^{i+1} f(..^x_i.., x_n, x_i . x_{n+1})
      + sum_{i<j} (-1)^{i+j} f([x_i, x_j], ..^x_i..^x_j.., x_{n+1})
    """
    if n < 1:
        raise ValueError("pre-Lie coboundary is defined from degree 1")
    a = rep.algebra
    d, m = a.dim, rep.space_dim
    src = PreLieCochainSpace(n, d, m, size_limit)
    dst = PreLieCochainSpace(n + 1, d, m, size_limit)
    br = lie_bracket_tensor(a)
    rows = [[ZERO] * src.dim for _ in range(dst.dim)]
    for wedge, last in dst.tuples():
        out_base = dst.index(wedge, last, 0)
        xs = list(wedge)
        for i in range(n):
            sgn = 1 if i % 2 == 0 else -1
            rest = xs[:i] + xs[i + 1:]
            xi = xs[i]
            # rho(x_i) f(rest, x_{n+1})
            s = src.slot(rest, last)
            if s is not None:
                sign, base = s
                rho = rep.rho[xi]
                for vp in range(m):
                    row = rows[out_base + vp]
                    for v in range(m):
                        if rho[vp, v]:
                            row[base + v] += sgn * sign * rho[vp, v]
            # mu(x_{n+1}) f(rest, x_i)
            s = src.slot(rest, xi)
            if s is not None:
                sign, base = s
                mu = rep.mu[last]
                for vp in range(m):
                    row = rows[out_base + vp]
                    for v in range(m):
                        if mu[vp, v]:
                            row[base + v] += sgn * sign * mu[vp, v]
            # - f(rest, x_i . x_{n+1})
            prod = a.c[xi][last]
            for k in range(d):
                if not prod[k]:
                    continue
                s = src.slot(rest, k)
                if s is None:
                    continue
                sign, base = s
                for vp in range(m):
                    rows[out_base + vp][base + vp] -= sgn * sign * prod[k]
        for i, j in itertools.combinations(range(n), 2):
            sgn = 1 if (i + j) % 2 == 0 else -1
            rest = [x for t, x in enumerate(xs) if t != i and t != j]
            b = br[xs[i]][xs[j]]
            for k in range(d):
                if not b[k]:
                    continue
                s = src.slot([k] + rest, last)
                if s is None:
                    continue
                sign, base = s
                for vp in range(m):
                    rows[out_base + vp][base + vp] += sgn * sign * b[k]
    return Mat(rows, src.dim)


def ce_d_matrix(n: int, rep: LieRepresentation, size_limit: int = DEFAULT_SIZE_LIMIT) -> Mat:
    """Matrix of the Chevalley-Eilenberg coboundary C^n -> C^{n+1}.

        sum_i (-1)^{i+1} rho(x_i) f(..^x_i..)
      + sum_{i<j} (-1)^{i+j} f([x_i, x_j], ..^x_i..^x_j..)
    """
    if n < 0:
        raise ValueError("CE coboundary is defined from degree 0")
    a = rep.algebra
    d, w = a.dim, rep.space_dim
    src = CECochainSpace(n, d, w, size_limit)
    dst = CECochainSpace(n + 1, d, w, size_limit)
    br = lie_bracket_tensor(a)
    rows = [[ZERO] * src.dim for _ in range(dst.dim)]
    for wedge in dst.wedges():
        out_base = dst.index(wedge, 0)
        xs = list(wedge)
        for i in range(n + 1):
            sgn = 1 if i % 2 == 0 else -1
            s = src.slot(xs[:i] + xs[i + 1:])
            if s is None:
                continue
            sign, base = s
            rho = rep.rho[xs[i]]
            for vp in range(w):
                row = rows[out_base + vp]
                for v in range(w):
                    if rho[vp, v]:
                        row[base + v] += sgn * sign * rho[vp, v]
        for i, j in itertools.combinations(range(n + 1), 2):
            sgn = 1 if (i + j) % 2 == 0 else -1
            rest = [x for t, x in enumerate(xs) if t != i and t != j]
            b = br[xs[i]][xs[j]]
            for k in range(d):
                if not b[k]:
                    continue
                s = src.slot([k] + rest)
                if s is None:
                    continue
                sign, base = s
                for vp in range(w):
                    rows[out_base + vp][base + vp] += sgn * sign * b[k]
    return Mat(rows, src.dim)


@dataclass(frozen=True)
class CohomologyResult:
    dimension: int
    representatives: list
    kernel_dim: int
    image_rank: int
    quotient: QuotientBasis = field(repr=False, compare=False)

    def class_coordinates(self, coords: Sequence) -> Vector:
        return self.quotient.class_coordinates(coords)


def cohomology(d_low: Mat | None, d_high: Mat | None, dim: int | None = None) -> CohomologyResult:
    """Kernel of ``d_high`` modulo the image of ``d_low``.

    ``None`` stands for a zero map (from the zero space, or to it); ``dim`` is
    the dimension of the middle space and is required only if both are None.
    """
    if dim is None:
        if d_high is not None:
            dim = d_high.cols
        elif d_low is not None:
            dim = d_low.rows
        else:
            raise ValueError("middle dimension unknown")
    if d_high is not None and d_high.cols != dim:
        raise ShapeMismatch("outgoing map does not start at the middle space")
    if d_low is not None and d_low.rows != dim:
        raise ShapeMismatch("incoming map does not end at the middle space")
    if d_low is not None and d_high is not None and not (d_high @ d_low).is_zero():
        raise NotAComplex("consecutive differentials do not compose to zero")
    if d_high is None:
        kernel = [tuple(1 if i == j else 0 for i in range(dim)) for j in range(dim)]
    else:
        kernel = nullspace_basis(d_high)
    image = d_low.columns() if d_low is not None else []
    r = rank(d_low) if d_low is not None else 0
    q = QuotientBasis(kernel, [c for c in image if any(c)], dim)
    result = CohomologyResult(len(kernel) - r, q.representatives, len(kernel), r, q)
    assert len(result.representatives) == result.dimension
    return result
