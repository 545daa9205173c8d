"""Representations of pre-Lie algebras and of their sub-adjacent Lie algebras.

A pre-Lie representation ``(V; rho, mu)`` stores one ``m x m`` matrix per
basis element for each of ``rho`` and ``mu``.  The dual space is identified
with column vectors through the basis, so the coadjoint-type maps are negated
transposes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import (
    Algebra,
    MorphismTriple,
    Verdict,
    as_pre_lie,
    left_mul,
    left_mul_vec,
    right_mul,
    right_mul_vec,
    sub_adjacent,
)
from .errors import AlgebraMismatch, ShapeMismatch
from .linalg import ZERO, Mat


def _combine(mats: tuple, coeffs) -> Mat:
    """``sum_k coeffs[k] * mats[k]``."""
    n = mats[0].rows if mats else 0
    out = Mat.zeros(n, n)
    for c, m in zip(coeffs, mats):
        if c:
            out = out + m * c
    return out


@dataclass(frozen=True)
class Representation:
    algebra: Algebra
    space_dim: int
    rho: tuple
    mu: tuple

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(self.rho))
        object.__setattr__(self, "mu", tuple(self.mu))
        d, m = self.algebra.dim, self.space_dim
        if len(self.rho) != d or len(self.mu) != d:
            raise ShapeMismatch(f"need {d} rho and mu matrices, got {len(self.rho)} and {len(self.mu)}")
        for a in self.rho + self.mu:
            if a.shape != (m, m):
                raise ShapeMismatch(f"action matrix of shape {a.shape}, expected {(m, m)}")

    def rho_of(self, x) -> Mat:
        return _combine(self.rho, x)

    def mu_of(self, x) -> Mat:
        return _combine(self.mu, x)


@dataclass(frozen=True)
class LieRepresentation:
    algebra: Algebra
    space_dim: int
    rho: tuple

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(self.rho))
        if len(self.rho) != self.algebra.dim:
            raise ShapeMismatch("need one action matrix per basis element")
        for a in self.rho:
            if a.shape != (self.space_dim, self.space_dim):
                raise ShapeMismatch(f"action matrix of shape {a.shape}, expected square of size {self.space_dim}")

    def rho_of(self, x) -> Mat:
        return _combine(self.rho, x)


def _lie_rep_verdict(a: Algebra, rho: tuple, bracket) -> Verdict:
    d = a.dim
    for i, j in itertools.combinations(range(d), 2):
        lhs = _combine(rho, bracket(a.e(i), a.e(j)))
        rhs = rho[i] @ rho[j] - rho[j] @ rho[i]
        if lhs != rhs:
            return Verdict(False, "LieRepresentation", (i + 1, j + 1))
    return Verdict.passed()


def check_representation(r: Representation) -> Verdict:
    """Both axioms on all basis pairs: rho is a Lie representation of the
    commutator algebra, and ``rho(x)mu(y) - mu(y)rho(x) = mu(x.y) - mu(y)mu(x)``.
    """
    a = r.algebra
    v = _lie_rep_verdict(a, r.rho, a.bracket)
    if not v:
        return v
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = r.rho[i] @ r.mu[j] - r.mu[j] @ r.rho[i]
            rhs = r.mu_of(a.c[i][j]) - r.mu[j] @ r.mu[i]
            if lhs != rhs:
                return Verdict(False, "MuCompatibility", (i + 1, j + 1))
    return Verdict.passed()


def check_lie_representation(r: LieRepresentation) -> Verdict:
    return _lie_rep_verdict(r.algebra, r.rho, r.algebra.mul)


def trivial_rep(a: Algebra, space_dim: int = 1) -> Representation:
    z = Mat.zeros(space_dim, space_dim)
    return Representation(a, space_dim, (z,) * a.dim, (z,) * a.dim)


def regular_rep(a: Algebra) -> Representation:
    a = as_pre_lie(a)
    return Representation(
        a, a.dim, [left_mul(a, i) for i in range(a.dim)], [right_mul(a, i) for i in range(a.dim)]
    )


def coregular_rep(a: Algebra) -> Representation:
    """Representation on the dual: ``rho = L* - R*``, ``mu = -R*``."""
    a = as_pre_lie(a)
    rho, mu = [], []
    for i in range(a.dim):
        lt, rt = left_mul(a, i).T, right_mul(a, i).T
        rho.append(rt - lt)
        mu.append(rt)
    return Representation(a, a.dim, rho, mu)


def morphism_rep(t: MorphismTriple) -> Representation:
    """Representation of g on h: ``rho(x)u = phi(x).u``, ``mu(x)u = u.phi(x)``."""
    cols = t.phi.columns()
    return Representation(
        t.g, t.h.dim, [left_mul_vec(t.h, c) for c in cols], [right_mul_vec(t.h, c) for c in cols]
    )


def hom_index(j: int, v: int, space_dim: int) -> int:
    """Coordinate of the elementary map ``e_j -> v`` in Hom(g, V), ordered by (j, v)."""
    return j * space_dim + v


def hom_space_rep(a: Algebra, r: Representation) -> LieRepresentation:
    """Representation of the commutator algebra on Hom(g, V):

        (x . f)(y) = rho(x) f(y) + mu(y) f(x) - f(x . y)

    Hom(g, V) is coordinatized by pairs (input j, output v) in lexicographic
    order.  The ``+ mu(y) f(x)`` sign is the one that makes the relabeling of
    Chevalley-Eilenberg cochains into pre-Lie cochains a chain map.
    """
    if r.algebra.c != a.c:
        raise AlgebraMismatch("representation belongs to a different algebra")
    a = as_pre_lie(a)
    d, m = a.dim, r.space_dim
    w = d * m
    mats = []
    for x in range(d):
        rows = [[ZERO] * w for _ in range(w)]
        rx = r.rho[x]
        for jp in range(d):
            mu_y = r.mu[jp]
            xy = a.c[x][jp]
            for vp in range(m):
                row = rows[hom_index(jp, vp, m)]
                for v in range(m):
                    if rx[vp, v]:
                        row[hom_index(jp, v, m)] += rx[vp, v]
                    if mu_y[vp, v]:
                        row[hom_index(x, v, m)] += mu_y[vp, v]
                for k in range(d):
                    if xy[k]:
                        row[hom_index(k, vp, m)] -= xy[k]
        mats.append(Mat(rows, w))
    lie = sub_adjacent(a)
    return LieRepresentation(lie, w, mats)
