from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from cyltn.core import LaurentPoly
from cyltn.poly import RatPoly, poly_gcd, poly_xgcd, squarefree_part, yun
from oracles import to_sympy
from strategies import rationals

polys = st.lists(rationals, max_size=6).map(RatPoly)
nonzero = polys.filter(lambda p: not p.is_zero())


def test_construction():
    p = RatPoly([1, 2, 0, 0])
    assert p.degree == 1 and p.coeffs == (1, 2)
    assert RatPoly().degree == -1
    assert RatPoly.parse("1, -1/2 ,3") == RatPoly([1, Fraction(-1, 2), 3])
    assert RatPoly.parse("") == RatPoly()
    assert RatPoly.from_roots([1, 2]) == RatPoly([2, -3, 1])
    assert RatPoly([3, 1])(Fraction(-3)) == 0
    with pytest.raises(ValueError):
        RatPoly.from_laurent(LaurentPoly({-1: 1}))
    assert RatPoly.from_laurent(RatPoly([0, 2, 1]).to_laurent()) == RatPoly([0, 2, 1])


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a
    assert (a * b).to_laurent() == a.to_laurent() * b.to_laurent()


@given(polys, nonzero)
def test_division(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(polys, polys)
def test_xgcd_and_gcd_match_sympy(a, b):
    g, s, t = poly_xgcd(a, b)
    assert s * a + t * b == g
    if a.is_zero() and b.is_zero():
        return
    expect = sympy.gcd(to_sympy(a), to_sympy(b)).monic()
    assert to_sympy(poly_gcd(a, b)) == expect


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4),
       st.lists(st.integers(1, 3), min_size=4, max_size=4))
def test_yun_matches_multiplicities(roots, mults):
    p = RatPoly([2])
    for r, k in zip(roots, mults):
        p = p * RatPoly.from_roots([r] * k)
    factors = yun(p)
    rebuilt = RatPoly([p.lead()])
    for k, f in enumerate(factors, 1):
        for _ in range(k):
            rebuilt = rebuilt * f
        assert f.degree <= 0 or poly_gcd(f, f.derivative()).degree == 0
    assert rebuilt == p
    sqf = squarefree_part(p)
    assert sqf.degree == len(set(roots[:len(mults)]))


def test_derivative_and_shift():
    p = RatPoly([1, 2, 3])
    assert p.derivative() == RatPoly([2, 6])
    assert RatPoly([0, 0, 5]).divide_t(2) == RatPoly([5])
    assert RatPoly([0, 0, 5]).low_order() == 2
    with pytest.raises(ValueError):
        p.divide_t()
    with pytest.raises(ZeroDivisionError):
        divmod(p, RatPoly())
