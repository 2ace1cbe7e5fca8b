"""Hurwitz matrices and two independent interlacing oracles.

``interlaces_sturm`` isolates roots exactly and compares them; ``interlaces_routh``
runs the row-reduction recursion on the Hurwitz matrix.  Roots are listed in
decreasing order, and ``p0`` interlaces ``p1`` when ``x1 >= y1 >= x2 >= y2 >= ...``
for the roots ``x`` of ``p0`` and ``y`` of ``p1`` with ``deg p0`` equal to
``deg p1`` or one more.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import LoopMatrix
from .poly import RatPoly, squarefree_part, yun

__all__ = [
    "RatPoly", "RootIsolation", "hurwitz", "sturm_sequence", "count_roots", "isolate_roots",
    "real_rooted", "interlaces_sturm", "interlaces_routh", "interlaces", "reverse",
    "check_same_row_col", "Violation", "row_pair",
]


def hurwitz(p0: RatPoly, p1: RatPoly) -> LoopMatrix:
    """The (2,1)-periodic matrix whose odd rows carry ``p1`` and even rows ``p0``."""
    return LoopMatrix(2, 1, [[p1.to_laurent()], [p0.to_laurent()]])


# -- Sturm machinery ------------------------------------------------------------------

def sturm_sequence(p: RatPoly) -> list[RatPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _variations(seq: list[RatPoly], x: Fraction) -> int:
    signs = [v for v in (q(x) for q in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def root_bound(p: RatPoly) -> Fraction:
    """Every real root lies strictly inside ``(-B, B)``."""
    lead = abs(p.lead())
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def count_roots(p: RatPoly, a: Fraction, b: Fraction, seq: list[RatPoly] | None = None) -> int:
    """Distinct real roots of ``p`` in the half-open interval ``(a, b]``."""
    if p.degree <= 0:
        return 0
    seq = seq or sturm_sequence(squarefree_part(p))
    return _variations(seq, a) - _variations(seq, b)


@dataclass
class RootIsolation:
    """Disjoint half-open intervals ``(lo, hi]`` in increasing order, one distinct
    real root in each.  ``exact`` holds the roots that landed on a bisection
    point or interval end."""

    poly: RatPoly
    intervals: list[tuple[Fraction, Fraction]]
    exact: list[Fraction] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.intervals)

    def refine(self, index: int) -> None:
        lo, hi = self.intervals[index]
        if lo == hi:
            return
        mid = (lo + hi) / 2
        p = self.poly
        if p(mid) == 0:
            self.intervals[index] = (mid, mid)
            self.exact.append(mid)
            return
        seq = sturm_sequence(p)
        if count_roots(p, lo, mid, seq) == 1:
            self.intervals[index] = (lo, mid)
        else:
            self.intervals[index] = (mid, hi)


def isolate_roots(p: RatPoly) -> RootIsolation:
    """Isolate the distinct real roots of ``p`` (any multiplicities)."""
    q = squarefree_part(p)
    if q.degree <= 0:
        return RootIsolation(q, [])
    seq = sturm_sequence(q)
    B = root_bound(q)
    out: list[tuple[Fraction, Fraction]] = []
    exact: list[Fraction] = []
    stack = [(-B, B, count_roots(q, -B, B, seq))]
    while stack:
        a, b, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            if q(b) == 0:
                out.append((b, b))
                exact.append(b)
            else:
                out.append((a, b))
            continue
        mid = (a + b) / 2
        left = count_roots(q, a, mid, seq)
        stack.append((mid, b, k - left))
        stack.append((a, mid, left))
    out.sort()
    exact.sort()
    return RootIsolation(q, out, exact)


def real_rooted(p: RatPoly) -> bool:
    """True when every complex root is real.  Constants and zero qualify."""
    if p.degree <= 0:
        return True
    return all(count_roots(f, -root_bound(f), root_bound(f)) == f.degree for f in yun(p))


def _roots_at_or_above(factors: list[RatPoly], a: Fraction, B: Fraction) -> int:
    """Roots (with multiplicity) in ``(a, B]`` given the square-free factors."""
    return sum(mult * count_roots(f, a, B) for mult, f in enumerate(factors, 1) if f.degree > 0)


def interlaces_sturm(p0: RatPoly, p1: RatPoly) -> bool:
    """Root-isolation oracle: does ``p0`` interlace ``p1``?"""
    if p1.is_zero():
        return real_rooted(p0)
    if p0.is_zero():
        return real_rooted(p1)
    if not (real_rooted(p0) and real_rooted(p1)):
        return False
    if p0.degree not in (p1.degree, p1.degree + 1):
        return False
    iso = isolate_roots(p0 * p1)
    if not iso.intervals:
        return True
    B = root_bound(iso.poly)
    f0, f1 = yun(p0), yun(p1)
    for lo, hi in iso.intervals:
        # roots >= r for the unique root r in (lo, hi]; an exact root uses (r - eps, r]
        a = lo if lo < hi else hi - _gap(iso)
        c0 = _roots_at_or_above(f0, a, B)
        c1 = _roots_at_or_above(f1, a, B)
        if not c1 <= c0 <= c1 + 1:
            return False
    return True


def _gap(iso: RootIsolation) -> Fraction:
    """A positive step smaller than the distance between consecutive intervals."""
    pts = sorted({x for iv in iso.intervals for x in iv})
    diffs = [b - a for a, b in zip(pts, pts[1:]) if b > a]
    return min(diffs, default=Fraction(1)) / 2


# -- Routh-style recursion ----------------------------------------------------------------

def interlaces_routh(p0: RatPoly, p1: RatPoly) -> bool:
    """Recursion on the Hurwitz matrix: clear the leading entry of the ``p0`` row
    with the ``p1`` row, divide by ``t``, and swap roles."""
    if not (p0.is_nonnegative() and p1.is_nonnegative()):
        raise ValueError("the recursion needs nonnegative coefficients")
    while True:
        if p1.is_zero():
            return p0.is_zero() or _routh_real_rooted(p0)
        if p0.is_zero():
            return _routh_real_rooted(p1)
        if p0.degree == 0 and p1.degree == 0:
            return True
        a0, b0 = p0[0], p1[0]
        if a0 == 0 and b0 == 0:
            p0, p1 = p0.divide_t(), p1.divide_t()
            continue
        if b0 == 0:
            return False
        if a0 == 0:
            p0, p1 = p1, p0.divide_t()
            continue
        if not p1.degree <= p0.degree <= p1.degree + 1:
            return False
        q = (p0 - p1 * (a0 / b0)).divide_t()
        if not q.is_nonnegative():
            return False
        p0, p1 = p1, q


def _routh_real_rooted(p: RatPoly) -> bool:
    # for nonnegative coefficients, p is real-rooted iff p interlaces p'
    if p.degree <= 0:
        return True
    return interlaces_routh(p, p.derivative())


def interlaces(p0: RatPoly, p1: RatPoly, method: str = "sturm") -> bool:
    if method == "sturm":
        return interlaces_sturm(p0, p1)
    if method == "routh":
        return interlaces_routh(p0, p1)
    raise ValueError(f"unknown method {method!r}")


def reverse(p: RatPoly, d: int) -> RatPoly:
    """``t**d * p(1/t)``."""
    if d < p.degree:
        raise ValueError("reversal degree below the polynomial degree")
    return RatPoly(p[d - k] for k in range(d + 1))


# -- entrywise necessary conditions ----------------------------------------------------

@dataclass(frozen=True)
class Violation:
    kind: str  # "column" or "row"
    i: int
    i2: int
    j: int
    j2: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "i": self.i, "i2": self.i2, "j": self.j, "j2": self.j2}


def check_same_row_col(M: LoopMatrix) -> list[Violation]:
    """Interlacing conditions every TN matrix with polynomial entries satisfies.

    Down a column, a lower entry interlaces an upper one.  Along a row, the
    reversals (to a common degree) interlace the other way round.  Column
    violations report ``j2 == j``; row violations report ``i2 == i``.
    """
    polys: list[list[RatPoly]] = []
    for row in M.entries:
        out = []
        for p in row:
            if not p.is_zero() and p.min_deg() < 0:
                raise ValueError("entries must be polynomials in t")
            if not p.is_nonnegative():
                raise ValueError("entries must have nonnegative coefficients")
            out.append(RatPoly.from_laurent(p))
        polys.append(out)
    found: list[Violation] = []
    for j in range(M.m):
        for i in range(M.n):
            for i2 in range(i + 1, M.n):
                if not interlaces_sturm(polys[i2][j], polys[i][j]):
                    found.append(Violation("column", i + 1, i2 + 1, j + 1, j + 1))
    for i in range(M.n):
        for j in range(M.m):
            for j2 in range(j + 1, M.m):
                p, q = polys[i][j], polys[i][j2]
                d = max(p.degree, q.degree, 0)
                if not interlaces_sturm(reverse(q, d), reverse(p, d)):
                    found.append(Violation("row", i + 1, i + 1, j + 1, j2 + 1))
    return found


def row_pair(p1: RatPoly, p0: RatPoly) -> LoopMatrix:
    """The (1,2)-periodic matrix ``[p1  p0]``."""
    return LoopMatrix(1, 2, [[p1.to_laurent(), p0.to_laurent()]])
