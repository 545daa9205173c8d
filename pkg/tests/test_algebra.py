from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import (
    abelian,
    change_basis,
    corpus_algebras,
    derivation_built,
    random_pre_lie,
    random_unimodular,
    square_to_first,
)
from prelie.algebra import (
    Algebra,
    Flavor,
    LinearMap,
    MorphismTriple,
    as_pre_lie,
    check_homomorphism,
    check_jacobi,
    check_pre_lie,
    left_mul,
    right_mul,
    sub_adjacent,
)
from prelie.errors import FlavorMismatch, IndexOutOfRange, NotHomomorphism, NotPreLie, ShapeMismatch
from prelie.linalg import Mat


def naive_mul(c, x, y):
    """Structure-constant expansion written with plain loops over dicts."""
    n = len(c)
    out = {k: 0 for k in range(n)}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                out[k] += x[i] * y[j] * c[i][j][k]
    return [out[k] for k in range(n)]


def naive_pre_lie_failures(a: Algebra):
    n = a.dim
    basis = [[1 if i == k else 0 for i in range(n)] for k in range(n)]

    def assoc(x, y, z):
        l = naive_mul(a.c, naive_mul(a.c, x, y), z)
        r = naive_mul(a.c, x, naive_mul(a.c, y, z))
        return [p - q for p, q in zip(l, r)]

    bad = []
    for i, j, k in itertools.product(range(n), repeat=3):
        d = [p - q for p, q in zip(assoc(basis[i], basis[j], basis[k]), assoc(basis[j], basis[i], basis[k]))]
        if any(d):
            bad.append(((i + 1, j + 1, k + 1), d))
    return bad


def random_tensor(rng, n, h=2):
    return [[[rng.randint(-h, h) if rng.random() < 0.4 else 0 for _ in range(n)] for _ in range(n)] for _ in range(n)]


# -- check_pre_lie ----------------------------------------------------------

def test_abelian_is_pre_lie():
    for n in range(4):
        assert check_pre_lie(abelian(n))


def test_square_to_first_is_pre_lie():
    assert check_pre_lie(square_to_first())
    assert naive_pre_lie_failures(square_to_first()) == []


def test_failing_example_reports_first_counterexample():
    a = Algebra.from_products(2, {(0, 0): {1: 1}, (1, 0): {0: 1}})
    v = check_pre_lie(a)
    assert not v
    assert v.witness == (1, 2, 1)
    assert v.residual == (0, -2)
    assert v.reason == "PreLieIdentity"
    assert naive_pre_lie_failures(a)[0] == ((1, 2, 1), [0, -2])
    with pytest.raises(NotPreLie):
        as_pre_lie(a)


def test_check_pre_lie_agrees_with_naive_oracle():
    rng = random.Random(3)
    verdicts = []
    for _ in range(150):
        n = rng.randint(1, 3)
        a = Algebra(n, random_tensor(rng, n))
        v = check_pre_lie(a)
        bad = naive_pre_lie_failures(a)
        assert bool(v) == (not bad)
        if not v:
            assert v.witness in [w for w, _ in bad]
        verdicts.append(bool(v))
    assert any(verdicts) and not all(verdicts)


def test_corpus_is_pre_lie():
    for name, a in corpus_algebras().items():
        assert check_pre_lie(a), name
        assert naive_pre_lie_failures(a) == [], name


# -- check_jacobi -----------------------------------------------------------

def test_jacobi_examples():
    assert check_jacobi(abelian(3))
    assert check_jacobi(Algebra.from_products(2, {(0, 1): {0: 1}, (1, 0): {0: -1}}))
    so3 = Algebra.from_products(
        3,
        {(0, 1): {2: 1}, (1, 0): {2: -1}, (1, 2): {0: 1}, (2, 1): {0: -1}, (2, 0): {1: 1}, (0, 2): {1: -1}},
    )
    assert check_jacobi(so3)


def test_jacobi_rejects_non_antisymmetric():
    v = check_jacobi(Algebra.from_products(1, {(0, 0): {0: 1}}))
    assert not v and v.reason == "Antisymmetry" and v.witness == (1, 1)


def test_jacobi_failure():
    # [e1,e2]=e3, [e1,e3]=e1: the cyclic sum on (e1,e2,e3) is e3
    a = Algebra.from_products(3, {(0, 1): {2: 1}, (1, 0): {2: -1}, (0, 2): {0: 1}, (2, 0): {0: -1}})
    v = check_jacobi(a)
    assert not v and v.reason == "Jacobi"
    assert v.witness == (1, 2, 3) and v.residual == (0, 0, 1)


# -- sub-adjacent -----------------------------------------------------------

def test_sub_adjacent_examples():
    assert sub_adjacent(abelian(2)).is_abelian()
    assert sub_adjacent(square_to_first()).is_abelian()
    lie = sub_adjacent(derivation_built())
    # 1 * x = x and x * 1 = 0, so [1, x] = x
    assert lie.c[0][1] == (0, 1)
    assert lie.c[1][0] == (0, -1)
    assert lie.flavor is Flavor.LIE


def test_sub_adjacent_rejects_non_pre_lie():
    with pytest.raises(NotPreLie):
        sub_adjacent(Algebra.from_products(2, {(0, 0): {1: 1}, (1, 0): {0: 1}}))


def test_sub_adjacent_satisfies_jacobi_on_corpus():
    for name, a in corpus_algebras().items():
        assert check_jacobi(sub_adjacent(a)), name


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3))
def test_sub_adjacent_jacobi_random(seed, dim):
    rng = random.Random(seed)
    if dim == 1:
        a = Algebra.from_products(1, {(0, 0): {0: rng.randint(-3, 3)}})
    else:
        a = random_pre_lie(rng, dim)
    assert check_jacobi(sub_adjacent(a))


# -- homomorphisms ----------------------------------------------------------

def test_homomorphism_examples():
    sq = square_to_first()
    assert check_homomorphism(LinearMap(sq, abelian(3), Mat.zeros(3, 2)))
    assert check_homomorphism(LinearMap(sq, sq, Mat.identity(2)))
    v = check_homomorphism(LinearMap(sq, abelian(2), Mat.identity(2)))
    assert not v and v.witness == (2, 2)


def test_homomorphism_flavor_mismatch():
    sq = square_to_first().with_flavor(Flavor.PRELIE)
    lie = sub_adjacent(sq)
    with pytest.raises(FlavorMismatch):
        check_homomorphism(LinearMap(sq, lie, Mat.identity(2)))


def test_linear_map_shape():
    with pytest.raises(ShapeMismatch):
        LinearMap(square_to_first(), abelian(3), Mat.zeros(2, 2))


def test_morphism_triple_validates():
    with pytest.raises(NotHomomorphism):
        MorphismTriple(square_to_first(), abelian(2), Mat.identity(2))
    t = MorphismTriple.identity(square_to_first())
    assert t.g.flavor is Flavor.PRELIE


def test_homomorphisms_descend_to_sub_adjacent():
    rng = random.Random(17)
    for a in corpus_algebras().values():
        p = random_unimodular(rng, a.dim)
        b = change_basis(a, p).with_flavor(Flavor.PRELIE)
        # the change-of-basis isomorphism b -> a has matrix p
        phi = LinearMap(b, a.with_flavor(Flavor.PRELIE), p)
        assert check_homomorphism(phi)
        assert check_homomorphism(LinearMap(sub_adjacent(b), sub_adjacent(a), p))


# -- left and right multiplication ------------------------------------------

def test_left_right_examples():
    sq = square_to_first()
    assert left_mul(abelian(2), 0).is_zero()
    assert left_mul(sq, 1) == Mat([[0, 1], [0, 0]])
    assert left_mul(sq, 0).is_zero()
    for i in range(2):
        assert left_mul(sq, i) == right_mul(sq, i)
    with pytest.raises(IndexOutOfRange):
        left_mul(sq, 2)
    with pytest.raises(IndexOutOfRange):
        right_mul(sq, -1)


def test_left_minus_right_is_adjoint():
    for name, a in corpus_algebras().items():
        lie = sub_adjacent(a)
        for i in range(a.dim):
            ad = Mat.from_columns([lie.c[i][j] for j in range(a.dim)], a.dim)
            assert left_mul(a, i) - right_mul(a, i) == ad, name


def test_left_mul_columns_match_products():
    for a in corpus_algebras().values():
        for i in range(a.dim):
            for j in range(a.dim):
                assert left_mul(a, i).apply(a.e(j)) == a.mul(a.e(i), a.e(j))
                assert right_mul(a, i).apply(a.e(j)) == a.mul(a.e(j), a.e(i))
