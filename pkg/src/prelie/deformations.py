"""Infinitesimal deformations of a pre-Lie-morphism triple.

A generator ``(omega, varpi, theta)`` deforms the products and the morphism to
``x ._t y = x.y + t omega(x, y)``, ``u *_t v = u.v + t varpi(u, v)`` and
``phi_t = phi + t theta``.  The bilinear maps are stored as unchecked
``Algebra`` tensors so they can be evaluated with the same code as products.

Degree-1 triple cochain coordinates: ``omega`` sits in C^2(g, g) at
``(i * d + j) * d + v``, ``varpi`` likewise in C^2(h, h), and ``theta`` in
C^1(g, h) at ``j * e + v``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .algebra import Algebra, Flavor, LinearMap, MorphismTriple, Verdict, check_pre_lie
from .cochains import CohomologyResult
from .constructions import check_nijenhuis
from .errors import CrossCheckMismatch, NotClosed, NotNijenhuisPair, ShapeMismatch, TripleMismatch
from .linalg import ZERO, Mat, Vector, in_span, is_zero_vec, vadd, vsub
from .triple import TripleComplex


@lru_cache(maxsize=32)
def _complex(t: MorphismTriple) -> TripleComplex:
    return TripleComplex(t)


def _matrix(op) -> Mat:
    return op.matrix if isinstance(op, LinearMap) else op


def _as_tensor(x, dim: int) -> Algebra:
    if isinstance(x, Algebra):
        if x.dim != dim:
            raise ShapeMismatch(f"bilinear map on a space of dimension {x.dim}, expected {dim}")
        return x.with_flavor(Flavor.UNCHECKED)
    return Algebra(dim, x, Flavor.UNCHECKED)


@dataclass(frozen=True)
class DeformationGenerator:
    triple: MorphismTriple
    omega: Algebra
    varpi: Algebra
    theta: Mat

    def __post_init__(self):
        t = self.triple
        object.__setattr__(self, "omega", _as_tensor(self.omega, t.g.dim))
        object.__setattr__(self, "varpi", _as_tensor(self.varpi, t.h.dim))
        object.__setattr__(self, "theta", _matrix(self.theta))
        if self.theta.shape != (t.h.dim, t.g.dim):
            raise ShapeMismatch(f"theta has shape {self.theta.shape}, expected {(t.h.dim, t.g.dim)}")

    @classmethod
    def zero(cls, t: MorphismTriple) -> "DeformationGenerator":
        return cls(t, Algebra.zero(t.g.dim), Algebra.zero(t.h.dim), Mat.zeros(t.h.dim, t.g.dim))

    def coords(self) -> Vector:
        d, e = self.triple.g.dim, self.triple.h.dim
        out = []
        for tensor, n in ((self.omega, d), (self.varpi, e)):
            for i, j in itertools.product(range(n), repeat=2):
                out.extend(tensor.c[i][j])
        for j in range(d):
            out.extend(self.theta.col(j))
        return tuple(out)

    @classmethod
    def from_coords(cls, t: MorphismTriple, coords) -> "DeformationGenerator":
        d, e = t.g.dim, t.h.dim
        sp = _complex(t).space(1)
        if len(coords) != sp.dim:
            raise ShapeMismatch(f"{len(coords)} coordinates for a degree-1 space of dimension {sp.dim}")
        a, b, c = sp.split(list(coords))

        def tensor(flat, n):
            return [[flat[(i * n + j) * n:(i * n + j + 1) * n] for j in range(n)] for i in range(n)]

        theta = Mat.from_columns([c[j * e:(j + 1) * e] for j in range(d)], e)
        return cls(t, tensor(a, d), tensor(b, e), theta)


@dataclass(frozen=True)
class EquationReport:
    """Per-equation verdicts, in a fixed order of labels."""

    equations: dict

    @property
    def ok(self) -> bool:
        return all(bool(v) for v in self.equations.values())

    def __bool__(self):
        return self.ok

    def failed(self) -> list:
        return [k for k, v in self.equations.items() if not v]

    def as_dict(self) -> dict:
        return {"pass": self.ok, "equations": {k: v.as_dict() for k, v in self.equations.items()}}


def _first_failure(reason: str, dims, residual) -> Verdict:
    """Scan basis tuples; ``residual(*idx)`` returns the defect vector."""
    for idx in itertools.product(*(range(n) for n in dims)):
        r = residual(*idx)
        if not is_zero_vec(r):
            return Verdict(False, reason, tuple(i + 1 for i in idx), tuple(r))
    return Verdict.passed()


def _signed_sum(terms, n: int) -> Vector:
    out = [ZERO] * n
    for sign, v in terms:
        for k, x in enumerate(v):
            if x:
                out[k] += sign * x
    return tuple(out)


def _cocycle_residual(a: Algebra, w: Algebra):
    """Defect of the t-coefficient of the pre-Lie identity for ``. + t w``."""
    n = a.dim

    def res(i, j, k):
        x, y, z = a.e(i), a.e(j), a.e(k)
        return _signed_sum(
            [
                (1, a.mul(x, w.mul(y, z))),
                (-1, a.mul(y, w.mul(x, z))),
                (1, a.mul(w.mul(y, x), z)),
                (-1, a.mul(w.mul(x, y), z)),
                (-1, w.mul(y, a.mul(x, z))),
                (1, w.mul(x, a.mul(y, z))),
                (-1, w.mul(a.bracket(x, y), z)),
            ],
            n,
        )

    return res


def _bracket_residual(w: Algebra):
    def res(i, j, k):
        x, y, z = w.e(i), w.e(j), w.e(k)
        return _signed_sum(
            [
                (1, w.mul(w.mul(x, y), z)),
                (-1, w.mul(x, w.mul(y, z))),
                (-1, w.mul(w.mul(y, x), z)),
                (1, w.mul(y, w.mul(x, z))),
            ],
            w.dim,
        )

    return res


def _generator_equations(gen: DeformationGenerator) -> dict:
    t = gen.triple
    g, h, phi, th = t.g, t.h, t.phi, gen.theta
    d, e = g.dim, h.dim
    om, vp = gen.omega, gen.varpi

    def one_cocycle(i, j):
        px, py, tx, ty = phi.col(i), phi.col(j), th.col(i), th.col(j)
        return _signed_sum(
            [
                (1, h.mul(px, ty)),
                (1, h.mul(tx, py)),
                (-1, th.apply(g.c[i][j])),
                (-1, phi.apply(om.c[i][j])),
                (1, vp.mul(px, py)),
            ],
            e,
        )

    def theta2(i, j):
        px, py, tx, ty = phi.col(i), phi.col(j), th.col(i), th.col(j)
        return _signed_sum(
            [
                (1, th.apply(om.c[i][j])),
                (-1, vp.mul(px, ty)),
                (-1, vp.mul(tx, py)),
                (-1, h.mul(tx, ty)),
            ],
            e,
        )

    return {
        "2-cocycle g": _first_failure("2-cocycle g", (d, d, d), _cocycle_residual(g, om)),
        "omega bracket": _first_failure("omega bracket", (d, d, d), _bracket_residual(om)),
        "eq:2-cocycle h": _first_failure("eq:2-cocycle h", (e, e, e), _cocycle_residual(h, vp)),
        "varpi bracket": _first_failure("varpi bracket", (e, e, e), _bracket_residual(vp)),
        "1-cocycle phi": _first_failure("1-cocycle phi", (d, d), one_cocycle),
        "eq:theta2": _first_failure("eq:theta2", (d, d), theta2),
    }


def _delta_blocks(t: MorphismTriple, k: int, coords) -> tuple:
    tc = _complex(t)
    image = tc.delta_prelie(k).apply(coords)
    return tc.space(k + 1).split(list(image))


def check_generator(gen: DeformationGenerator) -> EquationReport:
    """The six equations for a 1-parameter infinitesimal deformation, each
    cross-checked against its matrix formulation."""
    eqs = _generator_equations(gen)
    blocks = _delta_blocks(gen.triple, 1, gen.coords())
    for label, block in zip(("2-cocycle g", "eq:2-cocycle h", "1-cocycle phi"), blocks):
        if bool(eqs[label]) != is_zero_vec(block):
            raise CrossCheckMismatch(f"{label}: equation and coboundary block disagree", label=label)
    for label, w in (("omega bracket", gen.omega), ("varpi bracket", gen.varpi)):
        if bool(eqs[label]) != bool(check_pre_lie(w)):
            raise CrossCheckMismatch(f"{label}: equation and pre-Lie check disagree", label=label)
    return EquationReport(eqs)


def check_closed(gen: DeformationGenerator) -> Verdict:
    """``delta_preLie(omega, varpi, theta) == 0`` via the degree-1 coboundary matrix."""
    names = ("g", "h", "mixed")
    for name, block in zip(names, _delta_blocks(gen.triple, 1, gen.coords())):
        if not is_zero_vec(block):
            return Verdict(False, "NotClosed", (name,), tuple(block))
    return Verdict.passed()


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------

def _exact_residual(a: Algebra, w: Algebra, w2: Algebra, n: Mat):
    """``w - w2 - (x.N y + N x.y - N(x.y))``."""

    def res(i, j):
        x, y = a.e(i), a.e(j)
        return _signed_sum(
            [
                (1, w.c[i][j]),
                (-1, w2.c[i][j]),
                (-1, a.mul(x, n.col(j))),
                (-1, a.mul(n.col(i), y)),
                (1, n.apply(a.c[i][j])),
            ],
            a.dim,
        )

    return res


def _integral_residual(a: Algebra, w: Algebra, w2: Algebra, n: Mat):
    """``N w(x, y) - w2(x, N y) - w2(N x, y) - N x . N y``."""

    def res(i, j):
        x, y = a.e(i), a.e(j)
        return _signed_sum(
            [
                (1, n.apply(w.c[i][j])),
                (-1, w2.mul(x, n.col(j))),
                (-1, w2.mul(n.col(i), y)),
                (-1, a.mul(n.col(i), n.col(j))),
            ],
            a.dim,
        )

    return res


def _matrix_verdict(reason: str, lhs: Mat, rhs: Mat) -> Verdict:
    """Column-wise comparison; the witness is the 1-based input basis index."""
    for j in range(lhs.cols):
        diff = vsub(lhs.col(j), rhs.col(j))
        if not is_zero_vec(diff):
            return Verdict(False, reason, (j + 1,), diff)
    return Verdict.passed()


def check_equivalence(gen_a: DeformationGenerator, gen_b: DeformationGenerator, n_map, s_map) -> EquationReport:
    """The eight conditions for ``Id + tN``, ``Id + tS`` to identify the
    deformations generated by ``gen_a`` and ``gen_b``."""
    if gen_a.triple != gen_b.triple:
        raise TripleMismatch("generators belong to different triples")
    t = gen_a.triple
    g, h, phi = t.g, t.h, t.phi
    d, e = g.dim, h.dim
    n, s = _matrix(n_map), _matrix(s_map)
    if n.shape != (d, d) or s.shape != (e, e):
        raise ShapeMismatch("N must act on g and S on h")
    om, om2, vp, vp2 = gen_a.omega, gen_b.omega, gen_a.varpi, gen_b.varpi
    th, th2 = gen_a.theta, gen_b.theta
    eqs = {
        "2-exact": _first_failure("2-exact", (d, d), _exact_residual(g, om, om2, n)),
        "integral condition 1": _first_failure("integral condition 1", (d, d), _integral_residual(g, om, om2, n)),
        "eq:con1": _first_failure("eq:con1", (d, d), lambda i, j: om2.mul(n.col(i), n.col(j))),
        "2-exact h": _first_failure("2-exact h", (e, e), _exact_residual(h, vp, vp2, s)),
        "integral condition 1 h": _first_failure("integral condition 1 h", (e, e), _integral_residual(h, vp, vp2, s)),
        "eq:con1 h": _first_failure("eq:con1 h", (e, e), lambda i, j: vp2.mul(s.col(i), s.col(j))),
        "eq:relation7": _matrix_verdict("eq:relation7", th - th2, phi @ n - s @ phi),
        "eq:relation8": _matrix_verdict("eq:relation8", th2 @ n, s @ th),
    }
    # the exactness equations say gen_a - gen_b = delta_0(N, S, 0)
    diff = vsub(gen_a.coords(), gen_b.coords())
    sp1 = _complex(t).space(1)
    # the degree-0 mixed block is the zero space
    exact = _delta_blocks(t, 0, _op_coords(n) + _op_coords(s))
    for label, want, got in zip(("2-exact", "2-exact h", "eq:relation7"), sp1.split(list(diff)), exact):
        if bool(eqs[label]) != (tuple(want) == tuple(got)):
            raise CrossCheckMismatch(f"{label}: equation and coboundary block disagree", label=label)
    return EquationReport(eqs)


def _op_coords(op: Mat) -> Vector:
    """A linear map as a degree-1 pre-Lie cochain: coordinate ``(j, v)`` is op[v, j]."""
    out = []
    for j in range(op.cols):
        out.extend(op.col(j))
    return tuple(out)


# ---------------------------------------------------------------------------
# Nijenhuis pairs and trivial deformations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NijenhuisPair:
    triple: MorphismTriple
    n: Mat
    s: Mat

    def __post_init__(self):
        object.__setattr__(self, "n", _matrix(self.n))
        object.__setattr__(self, "s", _matrix(self.s))
        d, e = self.triple.g.dim, self.triple.h.dim
        if self.n.shape != (d, d) or self.s.shape != (e, e):
            raise ShapeMismatch("N must act on g and S on h")


def check_nijenhuis_pair(p: NijenhuisPair) -> EquationReport:
    t = p.triple
    return EquationReport(
        {
            "N Nijenhuis": check_nijenhuis(t.g, p.n),
            "S Nijenhuis": check_nijenhuis(t.h, p.s),
            "eq:Nijenhuis3": _matrix_verdict("eq:Nijenhuis3", p.s @ t.phi @ p.n, p.s @ p.s @ t.phi),
        }
    )


def pairs_from_compatible(result) -> list:
    """Nijenhuis pairs ``(S, N)`` on both triples of a ``CompatiblePair``."""
    return [NijenhuisPair(t, result.s, result.n) for t in result.triples]


def _coboundary_tensor(a: Algebra, n: Mat) -> list:
    """``x.N y + N x.y - N(x.y)`` on basis pairs."""
    return [
        [vsub(vadd(a.mul(a.e(i), n.col(j)), a.mul(n.col(i), a.e(j))), n.apply(a.c[i][j])) for j in range(a.dim)]
        for i in range(a.dim)
    ]


def trivial_deformation(p: NijenhuisPair) -> DeformationGenerator:
    """``(d N, d S, phi N - S phi)`` for a Nijenhuis pair, certified to be a
    generator that is equivalent to the zero generator via ``(N, S)``."""
    report = check_nijenhuis_pair(p)
    if not report:
        raise NotNijenhuisPair(f"not a Nijenhuis pair: {report.failed()}", report=report)
    t = p.triple
    gen = DeformationGenerator(
        t, _coboundary_tensor(t.g, p.n), _coboundary_tensor(t.h, p.s), t.phi @ p.n - p.s @ t.phi
    )
    for name, rep in (
        ("generator", check_generator(gen)),
        ("equivalence", check_equivalence(gen, DeformationGenerator.zero(t), p.n, p.s)),
    ):
        if not rep:
            raise CrossCheckMismatch(f"trivial deformation fails its {name} certificate: {rep.failed()}")
    return gen


# ---------------------------------------------------------------------------
# cohomology classes
# ---------------------------------------------------------------------------

def _require_closed(gen: DeformationGenerator):
    v = check_closed(gen)
    if not v:
        raise NotClosed(f"generator is not closed ({v.witness[0]} block)", verdict=v)


def first_cohomology(t: MorphismTriple) -> CohomologyResult:
    return _complex(t).cohomology(1)


def cohomology_class(gen: DeformationGenerator) -> Vector:
    """Coordinates of the class of a closed generator in H^1."""
    _require_closed(gen)
    return first_cohomology(gen.triple).class_coordinates(gen.coords())


def same_class(gen_a: DeformationGenerator, gen_b: DeformationGenerator) -> Verdict:
    if gen_a.triple != gen_b.triple:
        raise TripleMismatch("generators belong to different triples")
    _require_closed(gen_a)
    _require_closed(gen_b)
    t = gen_a.triple
    d0 = _complex(t).delta_prelie(0)
    diff = vsub(gen_a.coords(), gen_b.coords())
    if in_span(diff, d0.columns(), d0.rows):
        return Verdict.passed()
    return Verdict(False, "DifferentClass", residual=first_cohomology(t).class_coordinates(diff))
