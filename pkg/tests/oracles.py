"""Independent reference implementations used only by the tests."""
from __future__ import annotations

import random
from fractions import Fraction

import sympy

from cyltn.core import LaurentPoly, LoopMatrix, loop_mul
from cyltn.poly import RatPoly

_t = sympy.Symbol("t")


def to_sympy(p: RatPoly) -> sympy.Poly:
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)]
                      or [0], _t, domain="QQ")


def sympy_interlaces(p0: RatPoly, p1: RatPoly) -> bool:
    """Compare exact real roots (with multiplicity) computed by sympy."""
    def roots(p):
        if p.degree <= 0:
            return [], True
        P = to_sympy(p)
        rs = sympy.real_roots(P)
        return sorted(rs, reverse=True), len(rs) == P.degree()

    if p1.is_zero():
        return p0.is_zero() or roots(p0)[1]
    if p0.is_zero():
        return roots(p1)[1]
    x, ok0 = roots(p0)
    y, ok1 = roots(p1)
    if not (ok0 and ok1) or p0.degree not in (p1.degree, p1.degree + 1):
        return False
    merged = []
    for i, xi in enumerate(x):
        merged.append(xi)
        if i < len(y):
            merged.append(y[i])
    return all(a >= b for a, b in zip(merged, merged[1:]))


def random_poly(rng: random.Random, max_degree: int = 6) -> RatPoly:
    """Nonnegative coefficients; real-rooted more often than not."""
    k = rng.randint(0, max_degree)
    if rng.random() < 0.6:
        roots = [-Fraction(rng.randint(0, 8), rng.randint(1, 2)) for _ in range(k)]
        return RatPoly.from_roots(roots, rng.randint(1, 3))
    return RatPoly([rng.randint(0, 5) for _ in range(k + 1)])


def random_pair(rng: random.Random, max_degree: int = 6) -> tuple[RatPoly, RatPoly]:
    p0 = random_poly(rng, max_degree)
    if rng.random() < 0.5 and p0.degree >= 1:
        # a derivative interlaces whenever p0 is real-rooted; a bump may break it
        p1 = p0.derivative() * rng.randint(1, 3)
        if rng.random() < 0.3:
            p1 = p1 + RatPoly([rng.randint(0, 2)])
    else:
        p1 = random_poly(rng, max_degree)
    return p0, p1


def random_row_pair(rng: random.Random) -> tuple[RatPoly, RatPoly]:
    """``(p1, p0)`` for the one-row matrix ``[p1  p0]``."""
    def rooted(k):
        return RatPoly.from_roots([-Fraction(rng.randint(0, 8), rng.randint(1, 2))
                                   for _ in range(k)], rng.randint(1, 3))

    k = rng.randint(1, 5)
    p1 = rooted(k)
    if rng.random() < 0.5:
        p0 = p1.derivative() * rng.randint(1, 2) if rng.random() < 0.5 else rooted(
            rng.randint(k - 1, k))
    else:
        p0 = RatPoly([rng.randint(0, 4) for _ in range(rng.randint(1, k + 1))])
    return p1, p0


def whirl(n: int, params) -> LoopMatrix:
    """Identity plus ``a_i`` just right of the diagonal, wrapping with a factor of t."""
    rows = [[LaurentPoly.const(int(i == j)) for j in range(n)] for i in range(n)]
    for i, a in enumerate(params):
        if i + 1 < n:
            rows[i][i + 1] = LaurentPoly.const(a)
        else:
            rows[i][0] = rows[i][0] + LaurentPoly({1: a})
    return LoopMatrix(n, n, rows)


def whirl_product(rng: random.Random, n: int, count: int) -> LoopMatrix:
    weight = lambda: Fraction(rng.randint(1, 5), rng.randint(1, 3))
    M = LoopMatrix(n, n, [[LaurentPoly.const(weight()) if i == j else LaurentPoly()
                           for j in range(n)] for i in range(n)])
    for _ in range(count):
        M = loop_mul(M, whirl(n, [weight() for _ in range(n)]))
    return M
