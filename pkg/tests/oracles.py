"""Independent evaluators shared by the tests.

The coboundary formulas work on whole argument vectors through ``evaluate``
instead of assembling matrices row by row; rank comes from plain
Gauss-Jordan elimination rather than the fraction-free routine.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from prelie.algebra import Flavor
from prelie.cochains import Cochain, evaluate
from prelie.linalg import Mat


def add(*vs):
    return tuple(sum(x) for x in zip(*vs))


def scale(c, v):
    return tuple(c * x for x in v)


def naive_prelie_d(f: Cochain, rep, xs):
    a = rep.algebra
    n = f.space.degree
    last = xs[n]
    terms = []
    for i in range(n):
        sgn = (-1) ** i
        rest = xs[:i] + xs[i + 1:n]
        terms.append(scale(sgn, rep.rho_of(xs[i]).apply(evaluate(f, rest + [last]))))
        terms.append(scale(sgn, rep.mu_of(last).apply(evaluate(f, rest + [xs[i]]))))
        terms.append(scale(-sgn, evaluate(f, rest + [a.mul(xs[i], last)])))
    for i, j in itertools.combinations(range(n), 2):
        rest = [x for t, x in enumerate(xs[:n]) if t not in (i, j)]
        terms.append(scale((-1) ** (i + j), evaluate(f, [a.bracket(xs[i], xs[j])] + rest + [last])))
    return add(*terms) if terms else (0,) * rep.space_dim


def naive_ce_d(f: Cochain, rep, xs):
    a = rep.algebra
    n = f.space.degree
    terms = []
    for i in range(n + 1):
        rest = xs[:i] + xs[i + 1:]
        terms.append(scale((-1) ** i, rep.rho_of(xs[i]).apply(evaluate(f, rest))))
    for i, j in itertools.combinations(range(n + 1), 2):
        rest = [x for t, x in enumerate(xs) if t not in (i, j)]
        br = a.mul(xs[i], xs[j]) if a.flavor is Flavor.LIE else a.bracket(xs[i], xs[j])
        terms.append(scale((-1) ** (i + j), evaluate(f, [br] + rest)))
    return add(*terms) if terms else (0,) * rep.space_dim


# -- textbook Gauss-Jordan over Fraction ----------------------------------

def naive_rref(rows, ncols):
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def naive_rank(m: Mat) -> int:
    return len(naive_rref(m.tolist(), m.cols)[1])


def random_matrix(rng, rows, cols, height=3, density=0.6):
    def entry():
        if rng.random() > density:
            return 0
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    return Mat([[entry() for _ in range(cols)] for _ in range(rows)], cols)
