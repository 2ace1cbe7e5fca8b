from fractions import Fraction
from itertools import permutations
from math import prod

import pytest
from hypothesis import given, strategies as st

from cyltn.core import (DenseMatrix, LaurentPoly, LoopMatrix, determinant, fold, loop_add,
                        loop_mul, rational_str, split_index, to_rational, unfold_entry, window)
from strategies import laurent, loop_matrices, rationals

from conftest import poly


def leibniz(D: DenseMatrix) -> Fraction:
    n = D.rows
    total = Fraction(0)
    for p in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if p[a] > p[b])
        total += (-1) ** inv * prod((D[i, p[i]] for i in range(n)), start=Fraction(1))
    return total


def test_rational_coercion():
    assert to_rational("-3/4") == Fraction(-3, 4)
    assert to_rational(5) == 5
    with pytest.raises(TypeError):
        to_rational(0.5)
    assert rational_str(Fraction(22, 7)) == "22/7"
    assert rational_str(Fraction(-4)) == "-4"


def test_laurent_basics():
    p = poly(1, 2, low=-1)  # t^-1 + 2
    assert p.min_deg() == -1 and p.max_deg() == 0
    assert p * poly(0, 1) == poly(1, 2)
    assert p.invert_t() == poly(2, 1)
    assert (p - p).is_zero()
    assert str(LaurentPoly()) == "0"
    assert LaurentPoly.from_json(p.to_json()) == p


@given(laurent(), laurent(), laurent())
def test_laurent_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a + LaurentPoly() == a


@given(laurent(), laurent())
def test_laurent_product_matches_convolution(a, b):
    expect = {}
    for d1, v1 in a.coeffs.items():
        for d2, v2 in b.coeffs.items():
            expect[d1 + d2] = expect.get(d1 + d2, 0) + v1 * v2
    assert a * b == LaurentPoly(expect)


def test_unfolding_fixture(truncated_loop):
    M = truncated_loop
    assert unfold_entry(M, 1, 3) == 6
    assert unfold_entry(M, 2, 1) == 0
    assert window(M, [1, 2], [1, 2, 3, 4, 5, 6]).tolist() == [[1, 2, 6, 12, 36, 72],
                                                               [0, 1, 3, 6, 18, 36]]
    assert window(M, [3, 4], [3, 4, 5, 6]).tolist() == [[1, 2, 6, 12], [0, 1, 3, 6]]


def test_constant_one_by_one():
    M = LoopMatrix(1, 1, [[1]])
    for k in range(1, 6):
        assert unfold_entry(M, k, k) == 1
        assert unfold_entry(M, k, k + 1) == 0


def test_window_edge_cases(rotor_network):
    from cyltn.network import folded_weight_matrix
    W = folded_weight_matrix(rotor_network)
    assert window(W, [3, 4], [3, 4]).tolist() == [[1, 1], [1, 1]]
    assert window(W, [], []).rows == 0
    dup = window(W, [1, 2, 3, 4], [5, 5])
    assert [r[0] for r in dup.tolist()] == [r[1] for r in dup.tolist()]


def test_split_index_handles_nonpositive():
    assert split_index(1, 3) == (1, 0)
    assert split_index(0, 3) == (3, -1)
    assert split_index(-2, 3) == (1, -1)


def test_determinant_examples():
    assert determinant(DenseMatrix.of([[21, 40], [10, 18]])) == -22
    assert determinant(DenseMatrix.empty()) == 1
    assert determinant(DenseMatrix.of([[2, 1], [1, 1]])) == 1


@given(st.integers(1, 4).flatmap(
    lambda k: st.lists(st.lists(rationals, min_size=k, max_size=k), min_size=k, max_size=k)))
def test_determinant_matches_leibniz(rows):
    D = DenseMatrix.of(rows)
    assert determinant(D) == leibniz(D)


def test_identity_and_scalar_products():
    M = LoopMatrix(2, 3, [[poly(1, 2), 0, poly(3, low=-1)], [0, poly(0, 5), 1]])
    assert loop_mul(LoopMatrix.identity(2), M) == M
    t = LoopMatrix(1, 1, [[poly(0, 1)]])
    assert loop_mul(t, t) == LoopMatrix(1, 1, [[poly(0, 0, 1)]])


@given(st.data())
def test_loop_mul_matches_unfolded_product(data):
    n, k, m = (data.draw(st.integers(1, 3)) for _ in range(3))
    A = data.draw(loop_matrices(n, k))
    B = data.draw(loop_matrices(k, m))
    AB = loop_mul(A, B)
    # entries of the unfolded product are finite sums over the support band
    for I in range(1, 2 * n + 1):
        for J in range(1, 2 * m + 1):
            mid = range(-4 * k, 8 * k)
            direct = sum((unfold_entry(A, I, K) * unfold_entry(B, K, J) for K in mid),
                         Fraction(0))
            assert unfold_entry(AB, I, J) == direct


@given(loop_matrices(), st.data())
def test_add_and_transpose(M, data):
    N = data.draw(loop_matrices(M.n, M.m))
    S = loop_add(M, N)
    assert unfold_entry(S, 2, 3) == unfold_entry(M, 2, 3) + unfold_entry(N, 2, 3)
    T = M.transpose()
    for I in range(-3, 5):
        for J in range(-3, 5):
            assert unfold_entry(T, J, I) == unfold_entry(M, I, J)
    assert T.transpose() == M


@given(loop_matrices())
def test_fold_inverts_unfold(M):
    rng = M.degree_range() or (0, 0)
    assert fold(lambda I, J: unfold_entry(M, I, J), M.n, M.m, *rng) == M


@given(loop_matrices())
def test_json_round_trip(M):
    assert LoopMatrix.from_json(M.to_json()) == M
    D = window(M, [1, 2], [1, 2, 3])
    assert DenseMatrix.from_json(D.to_json()) == D


def test_shape_validation():
    with pytest.raises(ValueError):
        LoopMatrix(2, 2, [[1, 0]])
    with pytest.raises(ValueError):
        loop_mul(LoopMatrix.identity(2), LoopMatrix.identity(3))
