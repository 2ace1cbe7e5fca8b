"""Acceptance criteria 1-10.

Each test prints one ``criterion N: PASS|FAIL`` line (visible with ``-s`` or in
the terminal summary) and then asserts.  Running this file directly prints the
same lines without pytest.
"""
import random
import sys
import time
from fractions import Fraction
from itertools import combinations

import pytest

from cyltn.core import LaurentPoly, LoopMatrix, determinant, unfold_entry, window
from cyltn.factor import FactorizationStuck, NotTotallyNonnegative, factor
from cyltn.generate import lw_product, random_planar_network, random_rational_matrix
from cyltn.interlace import (hurwitz, interlaces_routh, interlaces_sturm, reverse, row_pair)
from cyltn.network import CylNetwork, Edge, folded_weight_matrix, glv_check
from cyltn.tl import (XI, NcMatching, TlElement, all_immanants, check_dcmd_det, cm_diagram,
                      comp_minor_immanant, theta)
from cyltn.tncheck import find_special_sw_corner, is_tn_window, zero_rows
from oracles import random_pair, random_row_pair

_sink = print


@pytest.fixture(autouse=True)
def _show_lines(capsys):
    global _sink

    def emit(line):
        with capsys.disabled():
            print("\n" + line)

    _sink = emit
    yield
    _sink = print


def report(number: int, ok: bool, detail: str, started: float) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}  " \
           f"({time.perf_counter() - started:.1f}s)"
    _sink(line)
    assert ok, line


def _subsets(n):
    return [S for k in range(n + 1) for S in combinations(range(1, n + 1), k)]


def _factors_cleanly(M):
    """True if certified, False if refuted, None if the search got stuck."""
    try:
        return factor(M).certified
    except NotTotallyNonnegative:
        return False
    except FactorizationStuck:
        return None


# -- 1 ---------------------------------------------------------------------------

def test_criterion_1_truncated_unfolding():
    t0 = time.perf_counter()
    blocks = {0: [[1, 2], [0, 1]], 1: [[6, 12], [3, 6]], 2: [[36, 72], [18, 36]]}
    M = LoopMatrix.from_blocks(blocks)
    bad = 0
    for I in range(1, 9):
        for J in range(-3, 13):
            i, r = (I - 1) % 2, (I - 1) // 2
            j, s = (J - 1) % 2, (J - 1) // 2
            expect = blocks.get(s - r, [[0, 0], [0, 0]])[i][j]
            bad += unfold_entry(M, I, J) != expect
    report(1, bad == 0, f"128 unfolded entries, {bad} mismatches", t0)


# -- 2 ---------------------------------------------------------------------------

def test_criterion_2_network_fixture():
    t0 = time.perf_counter()
    one = Fraction(1)
    N = CylNetwork(7, [Edge(0, 6, one), Edge(2, 6, one, 1), Edge(6, 3, one),
                       Edge(6, 5, one, -1), Edge(1, 4, one)], [0, 1, 2], [3, 4, 5])
    W = folded_weight_matrix(N)
    folded = LoopMatrix(3, 3, [[1, 0, LaurentPoly({-1: 1})], [0, 1, 0],
                               [LaurentPoly({1: 1}), 0, 1]])
    unfolded = [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0],
                [0, 0, 1, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]
    ok = W == folded and window(W, range(1, 7), range(1, 7)).tolist() == unfolded
    report(2, ok, "folded matrix and 6x6 unfolded window", t0)


# -- 3 ---------------------------------------------------------------------------

def test_criterion_3_tl5_product():
    t0 = time.perf_counter()
    t = lambda i: TlElement.gen(5, i)
    Ta = NcMatching.from_pairs(5, [(1, 2), (3, 6), (7, 8), (4, 9), (5, 10)])
    Tb = NcMatching.from_pairs(5, [(1, 2), (3, 6), (4, 7), (8, 9), (5, 10)])
    ok = (t(1) * t(2)) * (t(2) + t(3)) == TlElement(5, {Ta: XI, Tb: LaurentPoly.const(1)})
    report(3, ok, "(t1 t2)(t2 + t3) = xi T_a + T_b in TL_5", t0)


# -- 4 ---------------------------------------------------------------------------

def test_criterion_4_complementary_minor_identity():
    t0 = time.perf_counter()
    rng = random.Random(404)
    checked = fails = 0
    for _ in range(50):
        n = rng.randint(3, 5)
        M = random_rational_matrix(rng, n)
        imms = all_immanants(M)
        subsets = _subsets(n)
        for I in subsets:
            for J in subsets:
                if len(I) != len(J):
                    continue
                rhs = sum((imms[T] for T in theta(cm_diagram(I, J, n))), Fraction(0))
                fails += comp_minor_immanant(M, I, J) != rhs
                checked += 1
    report(4, fails == 0, f"50 matrices, {checked} (I,J) pairs, {fails} failures", t0)


# -- 5 ---------------------------------------------------------------------------

def test_criterion_5_positivity_and_vanishing():
    t0 = time.perf_counter()
    rng = random.Random(505)
    negative = nonvanishing = zero_minors = 0
    for _ in range(100):
        n = rng.randint(1, 5)
        M = lw_product(rng, n, factors=rng.randint(3, 12), allow_zero_diagonal=True)
        imms = all_immanants(M)
        negative += sum(v < 0 for v in imms.values())
        for I in _subsets(n):
            for J in _subsets(n):
                if len(I) == len(J) and comp_minor_immanant(M, I, J) == 0:
                    zero_minors += 1
                    nonvanishing += any(imms[T] != 0 for T in theta(cm_diagram(I, J, n)))
    ok = negative == 0 and nonvanishing == 0
    report(5, ok, f"100 TN matrices, {negative} negative immanants, {zero_minors} vanishing "
                  f"products, {nonvanishing} with a nonzero compatible immanant", t0)


# -- 6 ---------------------------------------------------------------------------

def test_criterion_6_path_families():
    t0 = time.perf_counter()
    rng = random.Random(606)
    minors = fails = 0
    for _ in range(20):
        N = random_planar_network(rng, rng.randint(1, 3), rng.randint(1, 3), max_vertices=8)
        assert N.vertex_count <= 8 and all(e.weight >= 0 for e in N.edges)
        count, bad = glv_check(N, max_order=3, periods=2)
        minors += count
        fails += len(bad)
    report(6, fails == 0, f"20 networks, {minors} minors, {fails} mismatches", t0)


# -- 7 and 8 ---------------------------------------------------------------------

def _trace_networks():
    rng = random.Random(707)
    return [random_planar_network(rng, rng.randint(1, 3), rng.randint(1, 3)) for _ in range(30)]


def test_criterion_7_factor_round_trip():
    t0 = time.perf_counter()
    fails = 0
    for N in _trace_networks():
        W = folded_weight_matrix(N)
        try:
            res = factor(W)
        except (NotTotallyNonnegative, FactorizationStuck):
            fails += 1
            continue
        fails += not (res.certified and folded_weight_matrix(res.network) == W
                      and all(e.weight >= 0 for e in res.network.edges))
    report(7, fails == 0, f"30 networks, {fails} failures", t0)


def test_criterion_8_post_elimination_windows():
    t0 = time.perf_counter()
    matrices = witnesses = 0
    for N in _trace_networks():
        for step in factor(folded_weight_matrix(N)).steps:
            if step.kind.startswith("base"):
                continue
            matrices += 1
            witnesses += is_tn_window(step.resulting_matrix, row_span=2, max_order=3) is not None
    report(8, witnesses == 0, f"{matrices} intermediate matrices, {witnesses} witnesses", t0)


# -- 9 ---------------------------------------------------------------------------

def _corner_instances(rng, n, m, count):
    found = []
    while len(found) < count:
        W = folded_weight_matrix(random_planar_network(rng, n, m))
        if zero_rows(W):
            continue
        corner = find_special_sw_corner(W)
        if corner is not None and corner.b0 != 0:
            found.append((W, corner))
    return found


def test_criterion_9_decorated_diagram_determinants():
    t0 = time.perf_counter()
    rng = random.Random(909)
    checks = fails = 0
    for n, m in ((2, 1), (4, 2)):
        for W, corner in _corner_instances(rng, n, m, 20):
            for _ in range(10):
                k = rng.randint(1, 4)
                I = sorted(rng.sample(range(corner.i_star - n, corner.i_star + 2 * n + 1), k))
                J = sorted(rng.sample(range(1, 4 * m + corner.j_star + 1), k))
                result = check_dcmd_det(W, corner, I, J)
                checks += 1
                fails += not all(result.values())
    report(9, fails == 0, f"40 instances, {checks} submatrices, {fails} failures", t0)


# -- 10 --------------------------------------------------------------------------

def test_criterion_10_interlacing():
    t0 = time.perf_counter()
    p = lambda *c: LaurentPoly.from_coeffs([Fraction(x) for x in c], 0)
    C = LoopMatrix(2, 2, [[p(21, 10, 1), p(40, 14, 1)], [p(10, 7, 1), p(18, 9, 1)]])
    minor = determinant(window(C, [1, 2], [1, 2]))
    try:
        factor(C)
        refuted = None
    except NotTotallyNonnegative as exc:
        refuted = exc.witness.value
    part_a = minor == -22 and refuted == -22

    rng = random.Random(1010)
    disagreements = stuck = 0
    for _ in range(300):
        p0, p1 = random_pair(rng)
        cert = _factors_cleanly(hurwitz(p0, p1))
        stuck += cert is None
        disagreements += not (interlaces_sturm(p0, p1) == interlaces_routh(p0, p1) == cert)

    reversal = 0
    for _ in range(50):
        p1, p0 = random_row_pair(rng)
        d = max(p1.degree, p0.degree)
        reversal += interlaces_sturm(reverse(p0, d), reverse(p1, d)) != \
            _factors_cleanly(row_pair(p1, p0))
    ok = part_a and disagreements == 0 and reversal == 0
    report(10, ok, f"witness {refuted}; 300 pairs, {disagreements} disagreements "
                   f"({stuck} stuck); 50 row pairs, {reversal} reversal mismatches", t0)


if __name__ == "__main__":
    failed = 0
    tests = [(int(name.split("_")[2]), fn) for name, fn in globals().items()
             if name.startswith("test_criterion_")]
    for _, fn in sorted(tests):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
