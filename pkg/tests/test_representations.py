from __future__ import annotations

import random

import pytest

from corpus import (
    abelian,
    corpus_algebras,
    corpus_triples,
    derivation_built,
    idempotent_line,
    random_pre_lie,
    square_to_first,
)
from prelie.algebra import Algebra, MorphismTriple, left_mul, right_mul, sub_adjacent
from prelie.errors import AlgebraMismatch, NotPreLie, ShapeMismatch
from prelie.linalg import Mat
from prelie.representations import (
    LieRepresentation,
    Representation,
    check_lie_representation,
    check_representation,
    coregular_rep,
    hom_index,
    hom_space_rep,
    morphism_rep,
    regular_rep,
    trivial_rep,
)


def naive_hom_action(a, r, sign):
    """Matrices of (x.f)(y) = rho(x)f(y) + sign*mu(y)f(x) - f(x.y), built by
    evaluating on each elementary map f: e_j -> e_v."""
    d, m = a.dim, r.space_dim
    mats = []
    for x in range(d):
        cols = []
        for j in range(d):
            for v in range(m):
                def f(vec, j=j, v=v):
                    return [vec[j] if k == v else 0 for k in range(m)]

                image = []
                for y in range(d):
                    fy = f(a.e(y))
                    fx = f(a.e(x))
                    val = [
                        p + sign * q - s
                        for p, q, s in zip(r.rho[x].apply(fy), r.mu[y].apply(fx), f(a.c[x][y]))
                    ]
                    image.extend(val)
                cols.append(image)
        mats.append(Mat.from_columns(cols, d * m))
    return mats


def three_reps(a):
    return [trivial_rep(a, 2), regular_rep(a), coregular_rep(a)]


def test_trivial_rep_passes():
    for a in corpus_algebras().values():
        for m in (0, 1, 3):
            assert check_representation(trivial_rep(a, m))


def test_regular_and_coregular_pass_on_corpus():
    for name, a in corpus_algebras().items():
        assert check_representation(regular_rep(a)), name
        assert check_representation(coregular_rep(a)), name


def test_regular_rep_examples():
    r = regular_rep(abelian(2))
    assert all(m.is_zero() for m in r.rho + r.mu)
    sq = square_to_first()
    r = regular_rep(sq)
    e2_to_e1 = Mat([[0, 1], [0, 0]])
    assert r.rho[1] == e2_to_e1 and r.mu[1] == e2_to_e1
    assert r.rho[0].is_zero()


def test_coregular_dim1_example():
    r = coregular_rep(idempotent_line())
    assert r.rho[0] == Mat([[0]])
    assert r.mu[0] == Mat([[1]])


def test_coregular_is_transposed_actions():
    for a in corpus_algebras().values():
        r = coregular_rep(a)
        for i in range(a.dim):
            assert r.rho[i] == right_mul(a, i).T - left_mul(a, i).T
            assert r.mu[i] == right_mul(a, i).T


def test_left_action_with_zero_mu_is_a_representation():
    # with mu = 0 both sides of the mixed identity vanish
    for a in corpus_algebras().values():
        reg = regular_rep(a)
        assert check_representation(Representation(a, a.dim, reg.rho, [Mat.zeros(a.dim, a.dim)] * a.dim))


def test_mixed_identity_failure():
    # 1 * x = x: with rho = 0, mu = R the identity at (1, x) reads 0 = R_x
    a = derivation_built()
    reg = regular_rep(a)
    v = check_representation(Representation(a, 2, [Mat.zeros(2, 2)] * 2, reg.mu))
    assert not v and v.reason == "MuCompatibility" and v.witness == (1, 2)
    v = check_representation(Representation(a, 2, reg.mu, reg.mu))
    assert not v and v.reason == "LieRepresentation"


def test_rep_requires_pre_lie():
    a = Algebra.from_products(2, {(0, 0): {1: 1}, (1, 0): {0: 1}})
    with pytest.raises(NotPreLie):
        regular_rep(a)
    with pytest.raises(NotPreLie):
        coregular_rep(a)


def test_rep_shape_checks():
    sq = square_to_first()
    with pytest.raises(ShapeMismatch):
        Representation(sq, 2, [Mat.zeros(2, 2)], [Mat.zeros(2, 2)] * 2)
    with pytest.raises(ShapeMismatch):
        Representation(sq, 2, [Mat.zeros(3, 3)] * 2, [Mat.zeros(2, 2)] * 2)


def test_morphism_rep():
    for name, t in corpus_triples().items():
        assert check_representation(morphism_rep(t)), name
    sq = square_to_first()
    assert morphism_rep(MorphismTriple.identity(sq)) == regular_rep(sq)
    z = morphism_rep(MorphismTriple.zero(sq, idempotent_line()))
    assert z == trivial_rep(sq.with_flavor(z.algebra.flavor), 1)


def test_hom_space_rep_matches_formula():
    for name, a in corpus_algebras().items():
        for r in three_reps(a):
            h = hom_space_rep(a, r)
            assert list(h.rho) == naive_hom_action(a, r, +1), name
            assert h.space_dim == a.dim * r.space_dim


def test_hom_space_rep_is_lie_rep_on_corpus():
    for name, a in corpus_algebras().items():
        for r in three_reps(a):
            assert check_lie_representation(hom_space_rep(a, r)), name


def test_minus_mu_variant_is_not_a_lie_rep():
    # the other sign on the mu term breaks the representation property
    failures = 0
    for a in corpus_algebras().values():
        lie = sub_adjacent(a)
        for r in (regular_rep(a), coregular_rep(a)):
            h = LieRepresentation(lie, a.dim * r.space_dim, naive_hom_action(a, r, -1))
            if not check_lie_representation(h):
                failures += 1
    assert failures > 0


def test_hom_space_rep_examples():
    h = hom_space_rep(abelian(2), trivial_rep(abelian(2), 3))
    assert all(m.is_zero() for m in h.rho)
    # rho(e1)f(e1) + mu(e1)f(e1) - f(e1.e1) = f(e1)
    one = idempotent_line()
    assert hom_space_rep(one, regular_rep(one)).rho == (Mat([[1]]),)


def test_hom_space_rep_random_dim2():
    rng = random.Random(41)
    for _ in range(5):
        a = random_pre_lie(rng, 2)
        assert check_lie_representation(hom_space_rep(a, regular_rep(a)))


def test_hom_space_rep_algebra_mismatch():
    with pytest.raises(AlgebraMismatch):
        hom_space_rep(square_to_first(), regular_rep(idempotent_line()))


def test_hom_index_layout():
    assert [hom_index(j, v, 3) for j in range(2) for v in range(3)] == list(range(6))
