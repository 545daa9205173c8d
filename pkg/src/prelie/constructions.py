"""Pre-Lie algebras and morphism triples built from operators.

Every new product is re-checked against the pre-Lie identity, and every
produced map against the homomorphism condition, instead of being trusted.
Operators may be given as ``Mat`` or ``LinearMap``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import (
    Algebra,
    Flavor,
    LinearMap,
    MorphismTriple,
    Verdict,
    as_comm_assoc,
    as_lie,
    as_pre_lie,
    check_homomorphism,
    sub_adjacent,
)
from .errors import (
    CrossCheckMismatch,
    Degenerate,
    NotCocycle,
    NotCompatible,
    NotDerivation,
    NotNijenhuis,
    NotOOperator,
    NotRotaBaxter,
    NotSMatrix,
    NonSquare,
    NotSymmetric,
    ShapeMismatch,
    SingularMatrix,
    SingularT2,
)
from .linalg import ZERO, Mat, Vector, invert, is_zero_vec, vadd, vscale, vsub
from .representations import Representation, coregular_rep


def _matrix(op) -> Mat:
    return op.matrix if isinstance(op, LinearMap) else op


def _square(op, n: int, what: str) -> Mat:
    m = _matrix(op)
    if m.shape != (n, n):
        raise ShapeMismatch(f"{what} has shape {m.shape}, expected {(n, n)}")
    return m


def _from_rule(dim: int, rule, flavor=Flavor.UNCHECKED) -> Algebra:
    """Algebra whose basis products are ``rule(i, j)``."""
    c = [[rule(i, j) for j in range(dim)] for i in range(dim)]
    return Algebra(dim, c, flavor)


def _certified(a: Algebra) -> Algebra:
    # raises NotPreLie if a constructor ever produces a non-pre-Lie product
    return as_pre_lie(a)


# ---------------------------------------------------------------------------
# derivations of commutative associative algebras
# ---------------------------------------------------------------------------

def check_derivation(a: Algebra, d_map) -> Verdict:
    dm = _square(d_map, a.dim, "derivation")
    for i, j in itertools.product(range(a.dim), repeat=2):
        lhs = dm.apply(a.c[i][j])
        rhs = vadd(a.mul(dm.col(i), a.e(j)), a.mul(a.e(i), dm.col(j)))
        diff = vsub(lhs, rhs)
        if not is_zero_vec(diff):
            return Verdict(False, "Leibniz", (i + 1, j + 1), diff)
    return Verdict.passed()


def derivation_to_prelie(a: Algebra, d_map) -> Algebra:
    """``x * y = x . D(y)`` on a commutative associative algebra with derivation D."""
    a = as_comm_assoc(a)
    v = check_derivation(a, d_map)
    if not v:
        raise NotDerivation(f"Leibniz rule fails at {v.witness}", verdict=v)
    dm = _matrix(d_map)
    return _certified(_from_rule(a.dim, lambda i, j: a.mul(a.e(i), dm.col(j))))


# ---------------------------------------------------------------------------
# symplectic Lie algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymplecticForm:
    lie_algebra: Algebra
    omega: Mat

    def __post_init__(self):
        d = self.lie_algebra.dim
        if self.omega.shape != (d, d):
            raise ShapeMismatch(f"form has shape {self.omega.shape}, expected {(d, d)}")
        if self.omega.T != -self.omega:
            raise NotSymmetric("symplectic form must be antisymmetric")

    def __call__(self, x, y):
        return sum((xi * self.omega[i, j] * y[j] for i, xi in enumerate(x) if xi for j in range(len(y)) if y[j]), ZERO)


def check_lie_cocycle(s: SymplecticForm) -> Verdict:
    """``w([x,y],z) + w([z,x],y) + w([y,z],x) = 0`` on basis triples."""
    g = s.lie_algebra
    for i, j, k in itertools.combinations(range(g.dim), 3):
        x, y, z = g.e(i), g.e(j), g.e(k)
        total = s(g.mul(x, y), z) + s(g.mul(z, x), y) + s(g.mul(y, z), x)
        if total:
            return Verdict(False, "LieCocycle", (i + 1, j + 1, k + 1), (total,))
    return Verdict.passed()


def symplectic_to_prelie(s: SymplecticForm) -> Algebra:
    """Product determined by ``w(x.y, z) = -w(y, [x, z])``."""
    g = as_lie(s.lie_algebra)
    v = check_lie_cocycle(s)
    if not v:
        raise NotCocycle(f"form is not a 2-cocycle at {v.witness}", verdict=v)
    try:
        inv_t = invert(s.omega.T)
    except SingularMatrix:
        raise Degenerate("symplectic form is degenerate") from None
    d = g.dim

    def rule(i, j):
        rhs = [-s(g.e(j), g.c[i][k]) for k in range(d)]
        return inv_t.apply(rhs)

    out = _certified(_from_rule(d, rule))
    if sub_adjacent(out).c != g.c:
        raise CrossCheckMismatch("commutator of the induced product differs from the Lie bracket")
    return out


# ---------------------------------------------------------------------------
# Rota-Baxter and Nijenhuis operators
# ---------------------------------------------------------------------------

def _operator_verdict(a: Algebra, op: Mat, inner, reason: str) -> Verdict:
    """Compare ``op(x).op(y)`` with ``op(inner(x, y))`` on basis pairs."""
    for i, j in itertools.product(range(a.dim), repeat=2):
        lhs = a.mul(op.col(i), op.col(j))
        rhs = op.apply(inner(i, j))
        diff = vsub(lhs, rhs)
        if not is_zero_vec(diff):
            return Verdict(False, reason, (i + 1, j + 1), diff)
    return Verdict.passed()


def rota_baxter_product(a: Algebra, r_map, weight=0) -> Algebra:
    """``x .R y = R(x).y + x.R(y) + weight x.y`` (not checked)."""
    r = _square(r_map, a.dim, "Rota-Baxter operator")
    return _from_rule(
        a.dim,
        lambda i, j: vadd(vadd(a.mul(r.col(i), a.e(j)), a.mul(a.e(i), r.col(j))), vscale(weight, a.c[i][j])),
    )


def check_rota_baxter(a: Algebra, r_map, weight=0) -> Verdict:
    r = _square(r_map, a.dim, "Rota-Baxter operator")
    rb = rota_baxter_product(a, r, weight)
    return _operator_verdict(a, r, lambda i, j: rb.c[i][j], "RotaBaxter")


def rota_baxter_triple(a: Algebra, r_map, weight=0) -> MorphismTriple:
    a = as_pre_lie(a)
    v = check_rota_baxter(a, r_map, weight)
    if not v:
        raise NotRotaBaxter(f"Rota-Baxter identity fails at {v.witness}", verdict=v)
    return MorphismTriple(_certified(rota_baxter_product(a, r_map, weight)), a, _matrix(r_map))


def nijenhuis_product(a: Algebra, n_map) -> Algebra:
    """``x ._N y = N(x).y + x.N(y) - N(x.y)`` (not checked)."""
    n = _square(n_map, a.dim, "Nijenhuis operator")
    return _from_rule(
        a.dim,
        lambda i, j: vsub(vadd(a.mul(n.col(i), a.e(j)), a.mul(a.e(i), n.col(j))), n.apply(a.c[i][j])),
    )


def check_nijenhuis(a: Algebra, n_map) -> Verdict:
    n = _square(n_map, a.dim, "Nijenhuis operator")
    deformed = nijenhuis_product(a, n)
    return _operator_verdict(a, n, lambda i, j: deformed.c[i][j], "Nijenhuis")


def nijenhuis_triple(a: Algebra, n_map) -> MorphismTriple:
    """((g, ._N), (g, .), N)."""
    a = as_pre_lie(a)
    v = check_nijenhuis(a, n_map)
    if not v:
        raise NotNijenhuis(f"Nijenhuis identity fails at {v.witness}", verdict=v)
    return MorphismTriple(_certified(nijenhuis_product(a, n_map)), a, _matrix(n_map))


# ---------------------------------------------------------------------------
# O-operators and s-matrices
# ---------------------------------------------------------------------------

def _o_shape(a: Algebra, rep: Representation, t_map) -> Mat:
    t = _matrix(t_map)
    if t.shape != (a.dim, rep.space_dim):
        raise ShapeMismatch(f"O-operator has shape {t.shape}, expected {(a.dim, rep.space_dim)}")
    if rep.algebra.c != a.c:
        raise ShapeMismatch("representation belongs to a different algebra")
    return t


def _o_action(rep: Representation, s: Mat, u: int, v: int) -> Vector:
    """``rho(S u) v + mu(S v) u`` on basis vectors u, v of V."""
    return vadd(rep.rho_of(s.col(u)).col(v), rep.mu_of(s.col(v)).col(u))


def o_operator_product(a: Algebra, rep: Representation, t_map) -> Algebra:
    """Product on V: ``u .T v = rho(T u) v + mu(T v) u`` (not checked)."""
    t = _o_shape(a, rep, t_map)
    return _from_rule(rep.space_dim, lambda u, v: _o_action(rep, t, u, v))


def check_o_operator(a: Algebra, rep: Representation, t_map) -> Verdict:
    t = _o_shape(a, rep, t_map)
    for u, v in itertools.product(range(rep.space_dim), repeat=2):
        lhs = a.mul(t.col(u), t.col(v))
        rhs = t.apply(_o_action(rep, t, u, v))
        diff = vsub(lhs, rhs)
        if not is_zero_vec(diff):
            return Verdict(False, "OOperator", (u + 1, v + 1), diff)
    return Verdict.passed()


def o_operator_triple(a: Algebra, rep: Representation, t_map) -> MorphismTriple:
    """((V, .T), (g, .), T)."""
    a = as_pre_lie(a)
    v = check_o_operator(a, rep, t_map)
    if not v:
        raise NotOOperator(f"O-operator identity fails at {v.witness}", verdict=v)
    return MorphismTriple(_certified(o_operator_product(a, rep, t_map)), a, _matrix(t_map))


@dataclass(frozen=True)
class SMatrixCandidate:
    """Symmetric ``r`` in Sym^2(g), stored as the matrix of ``r#: g* -> g``."""

    algebra: Algebra
    r: Mat

    def __post_init__(self):
        d = self.algebra.dim
        if self.r.shape != (d, d):
            raise ShapeMismatch(f"r has shape {self.r.shape}, expected {(d, d)}")
        if self.r.T != self.r:
            raise NotSymmetric("r must be symmetric")


def classical_bracket(c: SMatrixCandidate, a: int, b: int, k: int):
    """``[[r, r]](e*_a, e*_b, e*_k)``, dual pairings as coordinate reads."""
    g = c.algebra
    ra, rb, rk = c.r.col(a), c.r.col(b), c.r.col(k)
    return -g.mul(rb, rk)[a] + g.mul(ra, rk)[b] + g.bracket(ra, rb)[k]


def _s_matrix_direct(c: SMatrixCandidate) -> Verdict:
    for a, b, k in itertools.product(range(c.algebra.dim), repeat=3):
        val = classical_bracket(c, a, b, k)
        if val:
            return Verdict(False, "SEquation", (a + 1, b + 1, k + 1), (val,))
    return Verdict.passed()


def check_s_matrix(c: SMatrixCandidate) -> Verdict:
    """Evaluate ``[[r, r]] = 0`` directly and cross-check with the O-operator
    condition for ``r#`` and the coregular representation."""
    a = as_pre_lie(c.algebra)
    direct = _s_matrix_direct(c)
    via_o = check_o_operator(a, coregular_rep(a), c.r)
    if bool(direct) != bool(via_o):
        raise CrossCheckMismatch(
            "s-matrix equation and coregular O-operator test disagree",
            direct=direct,
            o_operator=via_o,
        )
    return direct


def s_matrix_triple(c: SMatrixCandidate) -> MorphismTriple:
    """((g*, .r), (g, .), r#)."""
    v = check_s_matrix(c)
    if not v:
        raise NotSMatrix(f"[[r, r]] does not vanish at {v.witness}", verdict=v)
    return o_operator_triple(c.algebra, coregular_rep(c.algebra), c.r)


# ---------------------------------------------------------------------------
# compatible O-operators and Nijenhuis pairs
# ---------------------------------------------------------------------------

def check_compatible_o(a: Algebra, rep: Representation, t1_map, t2_map) -> Verdict:
    """Cross term of ``(k1 T1 + k2 T2)`` being an O-operator:

        T1(rho(T2 u)v + mu(T2 v)u) + T2(rho(T1 u)v + mu(T1 v)u) = T1(u).T2(v) + T2(u).T1(v)
    """
    t1, t2 = _o_shape(a, rep, t1_map), _o_shape(a, rep, t2_map)
    for label, t in (("T1", t1), ("T2", t2)):
        v = check_o_operator(a, rep, t)
        if not v:
            raise NotOOperator(f"{label} is not an O-operator at {v.witness}", verdict=v)
    for u, v in itertools.product(range(rep.space_dim), repeat=2):
        lhs = vadd(t1.apply(_o_action(rep, t2, u, v)), t2.apply(_o_action(rep, t1, u, v)))
        rhs = vadd(a.mul(t1.col(u), t2.col(v)), a.mul(t2.col(u), t1.col(v)))
        diff = vsub(lhs, rhs)
        if not is_zero_vec(diff):
            return Verdict(False, "Compatibility", (u + 1, v + 1), diff)
    return Verdict.passed()


@dataclass(frozen=True)
class CompatiblePair:
    """Output of ``nijenhuis_pair_from_compatible``.

    ``n`` acts on g, ``s`` on V.  ``triples[i]`` is ((V, .Ti), (g, .), Ti); on it
    ``(s, n)`` is a Nijenhuis pair (source operator s, target operator n).
    """

    n: Mat
    s: Mat
    triples: tuple
    certificates: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(bool(v) for v in self.certificates.values())


def _pair_condition(t: MorphismTriple, src: Mat, dst: Mat) -> Verdict:
    lhs = dst @ t.phi @ src
    rhs = dst @ dst @ t.phi
    return Verdict.passed() if lhs == rhs else Verdict(False, "PairCondition")


def nijenhuis_pair_from_compatible(a: Algebra, rep: Representation, t1_map, t2_map) -> CompatiblePair:
    """``N = T1 T2^-1`` on g and ``S = T2^-1 T1`` on V, with certificates."""
    a = as_pre_lie(a)
    t1, t2 = _matrix(t1_map), _matrix(t2_map)
    v = check_compatible_o(a, rep, t1, t2)
    if not v:
        raise NotCompatible(f"O-operators are not compatible at {v.witness}", verdict=v)
    try:
        t2_inv = invert(t2)
    except (SingularMatrix, NonSquare) as exc:
        raise SingularT2("T2 must be invertible") from exc
    n = t1 @ t2_inv
    s = t2_inv @ t1
    triples = (o_operator_triple(a, rep, t1), o_operator_triple(a, rep, t2))
    certs = {"N Nijenhuis on g": check_nijenhuis(a, n)}
    for i, t in enumerate(triples, start=1):
        ti = (t1, t2)[i - 1]
        certs[f"S Nijenhuis on V.T{i}"] = check_nijenhuis(t.g, s)
        certs[f"N T{i} = T{i} S"] = Verdict.passed() if n @ ti == ti @ s else Verdict(False, "Intertwining")
        certs[f"pair condition on triple {i}"] = _pair_condition(t, s, n)
    out = CompatiblePair(n, s, triples, certs)
    if not out.ok:
        failed = [k for k, c in certs.items() if not c]
        raise CrossCheckMismatch(f"compatible pair certificates failed: {failed}", certificates=certs)
    return out


def twisted_product(v_alg: Algebra, s_map) -> Algebra:
    """Nijenhuis-deformed product of ``S`` on ``(V, .Ti)``."""
    v = check_nijenhuis(v_alg, s_map)
    if not v:
        raise NotNijenhuis(f"S is not a Nijenhuis operator at {v.witness}", verdict=v)
    return _certified(nijenhuis_product(v_alg, s_map))


def twisted_triple(a: Algebra, rep: Representation, t_map, n_map, s_map) -> MorphismTriple:
    """((V, .Ti_S), (g, ._N), Ti)."""
    v_alg = o_operator_triple(a, rep, t_map).g
    source = twisted_product(v_alg, s_map)
    vn = check_nijenhuis(a, n_map)
    if not vn:
        raise NotNijenhuis(f"N is not a Nijenhuis operator at {vn.witness}", verdict=vn)
    target = _certified(nijenhuis_product(a, n_map))
    t = MorphismTriple(source, target, _matrix(t_map))
    assert check_homomorphism(t.phi_map)
    return t
