"""Cohomology of a pre-Lie-morphism triple ``(g, h, phi)``.

Pre-Lie side, degree k >= 0::

    C^k = C^{k+1}(g, g) + C^{k+1}(h, h) + C^k(g, h)      (C^0(g, h) = 0)
    delta(f1, f2, f3) = (d_g f1, d_h f2, d_phi f3 + (-1)^k (phi o f1 - phi^* f2))

CE side, degree k >= -1, with values in the Hom-space representations::

    C^k_CE = C^{k+1}_CE(g, Hom(g,g)) + C^{k+1}_CE(h, Hom(h,h)) + C^k_CE(g, Hom(g,h))

The CE third block is zero only in degree -1.  Degree -1 exists so that the
relabeling map ``Phi_k: C^k_CE -> C^{k+1}`` is an isomorphism in every degree;
it carries a sign of -1 on the third block, which absorbs the shift of the
``(-1)^k`` coupling sign between the two complexes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .algebra import MorphismTriple
from .cochains import (
    DEFAULT_SIZE_LIMIT,
    CECochainSpace,
    CohomologyResult,
    PreLieCochainSpace,
    ce_d_matrix,
    cohomology,
    prelie_d_matrix,
)
from .linalg import ZERO, Mat, block_matrix, determinant, rank
from .representations import hom_space_rep, morphism_rep, regular_rep

PRELIE = "prelie"
CE = "ce"


@dataclass(frozen=True)
class TripleCochainSpace:
    """Block sizes of a degree-k triple cochain space, in (g, h, mixed) order."""

    degree: int
    side: str
    blocks: tuple[int, int, int]

    @property
    def dim(self) -> int:
        return sum(self.blocks)

    def split(self, coords):
        a, b, _ = self.blocks
        return coords[:a], coords[a:a + b], coords[a + b:]


def _prelie_dims(t: MorphismTriple, n: int) -> int:
    """dim C^n_preLie(g, h) with n >= 0 (zero for n == 0)."""
    if n <= 0:
        return 0
    return PreLieCochainSpace(n, t.g.dim, t.h.dim).dim


def triple_space(t: MorphismTriple, k: int, side: str = PRELIE, size_limit: int = DEFAULT_SIZE_LIMIT) -> TripleCochainSpace:
    dg, dh = t.g.dim, t.h.dim
    if side == PRELIE:
        if k < 0:
            raise ValueError("pre-Lie triple cochains start in degree 0")
        blocks = (
            PreLieCochainSpace(k + 1, dg, dg, size_limit).dim,
            PreLieCochainSpace(k + 1, dh, dh, size_limit).dim,
            PreLieCochainSpace(k, dg, dh, size_limit).dim if k >= 1 else 0,
        )
    elif side == CE:
        if k < -1:
            raise ValueError("CE triple cochains start in degree -1")
        blocks = (
            CECochainSpace(k + 1, dg, dg * dg, size_limit).dim,
            CECochainSpace(k + 1, dh, dh * dh, size_limit).dim,
            CECochainSpace(k, dg, dg * dh, size_limit).dim if k >= 0 else 0,
        )
    else:
        raise ValueError(f"unknown side {side!r}")
    return TripleCochainSpace(k, side, blocks)


# ---------------------------------------------------------------------------
# coupling maps
# ---------------------------------------------------------------------------

def post_compose_matrix(t: MorphismTriple, n: int) -> Mat:
    """f1 -> phi o f1, from C^n(g, g) to C^n(g, h)."""
    dg, dh = t.g.dim, t.h.dim
    src = PreLieCochainSpace(n, dg, dg)
    dst = PreLieCochainSpace(n, dg, dh)
    rows = [[ZERO] * src.dim for _ in range(dst.dim)]
    for wedge, j in dst.tuples():
        sb = src.index(wedge, j, 0)
        db = dst.index(wedge, j, 0)
        for vp in range(dh):
            for v in range(dg):
                if t.phi[vp, v]:
                    rows[db + vp][sb + v] = t.phi[vp, v]
    return Mat(rows, src.dim)


def pre_compose_matrix(t: MorphismTriple, n: int) -> Mat:
    """f2 -> f2(phi ., ..., phi .), from C^n(h, h) to C^n(g, h); every slot is composed."""
    dg, dh = t.g.dim, t.h.dim
    src = PreLieCochainSpace(n, dh, dh)
    dst = PreLieCochainSpace(n, dg, dh)
    cols = t.phi.columns()
    supports = [[(i, c) for i, c in enumerate(col) if c] for col in cols]
    rows = [[ZERO] * src.dim for _ in range(dst.dim)]
    for wedge, j in dst.tuples():
        db = dst.index(wedge, j, 0)
        for choice in itertools.product(*(supports[x] for x in wedge + (j,))):
            coeff = 1
            for _, c in choice:
                coeff *= c
            idx = [i for i, _ in choice]
            s = src.slot(idx[:-1], idx[-1])
            if s is None:
                continue
            sign, sb = s
            for v in range(dh):
                rows[db + v][sb + v] += sign * coeff
    return Mat(rows, src.dim)


def ce_post_compose_matrix(t: MorphismTriple, n: int) -> Mat:
    """f1 -> phi o f1 on CE cochains: C^n_CE(g, Hom(g,g)) -> C^n_CE(g, Hom(g,h))."""
    dg, dh = t.g.dim, t.h.dim
    src = CECochainSpace(n, dg, dg * dg)
    dst = CECochainSpace(n, dg, dg * dh)
    rows = [[ZERO] * src.dim for _ in range(dst.dim)]
    for wedge in dst.wedges():
        sb, db = src.index(wedge, 0), dst.index(wedge, 0)
        for y in range(dg):
            for vp in range(dh):
                for v in range(dg):
                    if t.phi[vp, v]:
                        rows[db + y * dh + vp][sb + y * dg + v] = t.phi[vp, v]
    return Mat(rows, src.dim)


def ce_pre_compose_matrix(t: MorphismTriple, n: int) -> Mat:
    """f2 -> ((x_1..x_n) -> (y -> f2(phi x_1..phi x_n)(phi y))): C^n_CE(h, Hom(h,h)) -> C^n_CE(g, Hom(g,h))."""
    dg, dh = t.g.dim, t.h.dim
    src = CECochainSpace(n, dh, dh * dh)
    dst = CECochainSpace(n, dg, dg * dh)
    cols = t.phi.columns()
    supports = [[(i, c) for i, c in enumerate(col) if c] for col in cols]
    rows = [[ZERO] * src.dim for _ in range(dst.dim)]
    for wedge in dst.wedges():
        db = dst.index(wedge, 0)
        for choice in itertools.product(*(supports[x] for x in wedge)):
            coeff = 1
            for _, c in choice:
                coeff *= c
            s = src.slot([i for i, _ in choice])
            if s is None:
                continue
            sign, sb = s
            # evaluate the Hom(h,h)-value at phi(e_y)
            for y in range(dg):
                for u, cy in supports[y]:
                    for vp in range(dh):
                        rows[db + y * dh + vp][sb + u * dh + vp] += sign * coeff * cy
    return Mat(rows, src.dim)


# ---------------------------------------------------------------------------
# differentials
# ---------------------------------------------------------------------------

class TripleComplex:
    """Differentials of both triple complexes, with per-degree caching."""

    def __init__(self, t: MorphismTriple, size_limit: int = DEFAULT_SIZE_LIMIT):
        self.triple = t
        self.size_limit = size_limit
        self.rep_g = regular_rep(t.g)
        self.rep_h = regular_rep(t.h)
        self.rep_phi = morphism_rep(t)
        self._hom_g = None
        self._hom_h = None
        self._hom_phi = None
        self.delta_prelie = lru_cache(maxsize=None)(self._delta_prelie)
        self.delta_ce = lru_cache(maxsize=None)(self._delta_ce)
        self.cohomology = lru_cache(maxsize=None)(self._cohomology)

    @property
    def hom_reps(self):
        if self._hom_g is None:
            t = self.triple
            self._hom_g = hom_space_rep(t.g, self.rep_g)
            self._hom_h = hom_space_rep(t.h, self.rep_h)
            self._hom_phi = hom_space_rep(t.g, self.rep_phi)
        return self._hom_g, self._hom_h, self._hom_phi

    def space(self, k: int, side: str = PRELIE) -> TripleCochainSpace:
        return triple_space(self.triple, k, side, self.size_limit)

    def _delta_prelie(self, k: int) -> Mat:
        t, lim = self.triple, self.size_limit
        src, dst = self.space(k), self.space(k + 1)
        sign = 1 if k % 2 == 0 else -1
        dg = prelie_d_matrix(k + 1, self.rep_g, lim)
        dh = prelie_d_matrix(k + 1, self.rep_h, lim)
        p = post_compose_matrix(t, k + 1) * sign
        q = pre_compose_matrix(t, k + 1) * (-sign)
        dphi = prelie_d_matrix(k, self.rep_phi, lim) if k >= 1 else None
        return block_matrix(
            [[dg, None, None], [None, dh, None], [p, q, dphi]], dst.blocks, src.blocks
        )

    def _delta_ce(self, k: int) -> Mat:
        t, lim = self.triple, self.size_limit
        src, dst = self.space(k, CE), self.space(k + 1, CE)
        hg, hh, hphi = self.hom_reps
        sign = 1 if k % 2 == 0 else -1
        dg = ce_d_matrix(k + 1, hg, lim)
        dh = ce_d_matrix(k + 1, hh, lim)
        p = ce_post_compose_matrix(t, k + 1) * sign
        q = ce_pre_compose_matrix(t, k + 1) * (-sign)
        dphi = ce_d_matrix(k, hphi, lim) if k >= 0 else None
        return block_matrix(
            [[dg, None, None], [None, dh, None], [p, q, dphi]], dst.blocks, src.blocks
        )

    def delta(self, k: int, side: str = PRELIE) -> Mat:
        return self.delta_prelie(k) if side == PRELIE else self.delta_ce(k)

    def lowest_degree(self, side: str) -> int:
        return 0 if side == PRELIE else -1

    def _cohomology(self, k: int, side: str = PRELIE) -> CohomologyResult:
        low = None if k == self.lowest_degree(side) else self.delta(k - 1, side)
        return cohomology(low, self.delta(k, side), self.space(k, side).dim)

    def phi_matrix(self, k: int) -> Mat:
        """Phi_k: C^k_CE -> C^{k+1}_preLie, identity on the g- and h-blocks and
        minus the identity on the mixed block."""
        src, dst = self.space(k, CE), self.space(k + 1)
        if src.blocks != dst.blocks:
            raise AssertionError(f"block sizes differ: {src.blocks} vs {dst.blocks}")
        a, b, c = src.blocks
        return block_matrix(
            [[Mat.identity(a), None, None], [None, Mat.identity(b), None], [None, None, -Mat.identity(c)]],
            dst.blocks,
            src.blocks,
        )


def delta_prelie_matrix(t: MorphismTriple, k: int) -> Mat:
    return TripleComplex(t).delta_prelie(k)


def delta_ce_matrix(t: MorphismTriple, k: int) -> Mat:
    return TripleComplex(t).delta_ce(k)


def phi_matrix(t: MorphismTriple, k: int) -> Mat:
    return TripleComplex(t).phi_matrix(k)


def triple_cohomology(t: MorphismTriple, k: int, side: str = PRELIE) -> CohomologyResult:
    return TripleComplex(t).cohomology(k, side)


@dataclass(frozen=True)
class CochainMapReport:
    ok: bool
    failures: tuple
    dims_prelie: tuple
    dims_ce: tuple

    def __bool__(self):
        return self.ok


def verify_cochain_map(t: MorphismTriple, k_max: int = 3, complex_: TripleComplex | None = None) -> CochainMapReport:
    """Check ``Phi_{k+1} delta_CE,k == delta_preLie,k+1 Phi_k`` and invertibility of
    every Phi_k for k = 0..k_max, and the resulting dimension shift of cohomology."""
    tc = complex_ or TripleComplex(t)
    failures = []
    for k in range(0, k_max + 1):
        p0, p1 = tc.phi_matrix(k), tc.phi_matrix(k + 1)
        if p0.rows and determinant(p0) == 0:
            failures.append(("invertible", k))
        if p1 @ tc.delta_ce(k) != tc.delta_prelie(k + 1) @ p0:
            failures.append(("intertwine", k))
    # Phi_{-1} links the bottom degrees
    pm = tc.phi_matrix(-1)
    if pm.rows and rank(pm) != pm.rows:
        failures.append(("invertible", -1))
    if tc.phi_matrix(0) @ tc.delta_ce(-1) != tc.delta_prelie(0) @ pm:
        failures.append(("intertwine", -1))
    dims_pre = tuple(tc.cohomology(k, PRELIE).dimension for k in range(0, k_max + 1))
    dims_ce = tuple(tc.cohomology(k - 1, CE).dimension for k in range(0, k_max + 1))
    if dims_pre != dims_ce:
        failures.append(("dimension-shift", dims_pre, dims_ce))
    return CochainMapReport(not failures, tuple(failures), dims_pre, dims_ce)
