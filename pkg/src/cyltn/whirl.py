"""Row insertion for square staircases that admit no elementary elimination.

Such a matrix is a product of whirls, and its whirl parameters are usually
irrational.  For every root ``z`` of ``det M(t)`` there is a whirl ``W_z``
with ``M = W_z * M_z``, and prepending any row of ``M_z`` to the matching row
of ``M`` keeps the unfolding totally nonnegative.  Summing that row over all
roots gives a rational row, computed here as a trace in ``Q[z] / (P(z))``
with ``P`` the square-free part of the determinant.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .core import LaurentPoly, LoopMatrix
from .poly import RatPoly, poly_xgcd, squarefree_part


def _perm_sign(p: tuple[int, ...]) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def laurent_det(M: LoopMatrix) -> LaurentPoly:
    """Determinant of a square folded matrix, by permutation expansion."""
    if M.n != M.m:
        raise ValueError("determinant of a non-square matrix")
    total = LaurentPoly()
    for p in permutations(range(M.n)):
        term = LaurentPoly.const(_perm_sign(p))
        for i, j in enumerate(p):
            term = term * M.entries[i][j]
            if term.is_zero():
                break
        total = total + term
    return total


class _Quotient:
    """Arithmetic in Q[z] modulo a square-free polynomial."""

    def __init__(self, modulus: RatPoly):
        self.mod = modulus.monic()
        self.dim = self.mod.degree

    def reduce(self, a: RatPoly) -> RatPoly:
        return a % self.mod

    def mul(self, a: RatPoly, b: RatPoly) -> RatPoly:
        return (a * b) % self.mod

    def inv(self, a: RatPoly) -> RatPoly | None:
        g, s, _ = poly_xgcd(a % self.mod, self.mod)
        return s % self.mod if g.degree == 0 else None

    def trace(self, a: RatPoly) -> Fraction:
        total = Fraction(0)
        basis = RatPoly([1])
        z = RatPoly([0, 1])
        for i in range(self.dim):
            total += self.mul(a, basis)[i]
            basis = self.mul(basis, z)
        return total

    def det(self, rows: list[list[RatPoly]]) -> RatPoly:
        k = len(rows)
        total = RatPoly()
        for p in permutations(range(k)):
            term = RatPoly([_perm_sign(p)])
            for i, j in enumerate(p):
                term = self.mul(term, rows[i][j])
                if term.is_zero():
                    break
            total = total + term
        return total


def whirl_row(M: LoopMatrix, k: int) -> list[LaurentPoly] | None:
    """The rational row to insert above row ``k``, or None if the construction
    does not apply (singular matrix, repeated roots of a bad kind, or a
    resulting row with a negative coefficient)."""
    n = M.n
    if n != M.m:
        raise ValueError("whirl insertion needs a square matrix")
    det = laurent_det(M)
    if det.is_zero():
        return None
    P = squarefree_part(RatPoly.from_laurent(det.shift(-det.min_deg())))
    if P.degree < 1:
        return None
    K = _Quotient(P)
    z = K.reduce(RatPoly([0, 1]))
    zinv = K.inv(z)
    if zinv is None:
        return None

    def at_z(p: LaurentPoly) -> RatPoly:
        acc = RatPoly()
        for d, c in p.coeffs.items():
            base = z if d >= 0 else zinv
            mono = RatPoly([1])
            for _ in range(abs(d)):
                mono = K.mul(mono, base)
            acc = acc + mono * c
        return acc

    Mz = [[at_z(p) for p in row] for row in M.entries]

    def cofactor(r: int, c: int) -> RatPoly:
        minor = [[Mz[i][j] for j in range(n) if j != c] for i in range(n) if i != r]
        v = K.det(minor) if minor else RatPoly([1])
        return v if (r + c) % 2 == 0 else -v

    u = inv_u = None
    for i in range(n):
        cand = [cofactor(j, i) for j in range(n)]  # row i of the adjugate
        invs = [K.inv(x) for x in cand]
        if all(x is not None for x in invs):
            u, inv_u = cand, invs
            break
    if u is None:
        return None
    a = [K.mul(-u[j + 1], inv_u[j]) for j in range(n - 1)]
    a.append(K.mul(K.mul(-u[0], inv_u[n - 1]), zinv))

    # numerator of row k of W^{-1} M, i.e. sum_j (-N)^j M with N^n = const * t
    numer: list[dict[int, RatPoly]] = [dict() for _ in range(n)]
    coef = RatPoly([1])
    for j in range(n):
        r = k - 1 + j
        wrap = 1 if r >= n else 0
        r %= n
        for c in range(n):
            for d, v in M.entries[r][c].coeffs.items():
                slot = numer[c]
                slot[d + wrap] = slot.get(d + wrap, RatPoly()) + coef * v
        coef = K.mul(-coef, a[r])

    row = []
    for c in range(n):
        f = numer[c]
        if not f or all(v.is_zero() for v in f.values()):
            row.append(LaurentPoly())
            continue
        lo, hi = min(f), max(f)
        g: dict[int, RatPoly] = {}
        prev = RatPoly()
        for d in range(lo, hi):
            prev = K.reduce(f.get(d, RatPoly()) + K.mul(prev, zinv))
            g[d] = prev
        if not K.reduce(f.get(hi, RatPoly()) + K.mul(prev, zinv)).is_zero():
            return None  # z is not a root of this entry: division is not exact
        row.append(LaurentPoly({d: K.trace(v) for d, v in g.items()}))
    if not any(not p.is_zero() for p in row) or not all(p.is_nonnegative() for p in row):
        return None
    return row


def insert_row(M: LoopMatrix, k: int, row: list[LaurentPoly]) -> LoopMatrix:
    entries = [list(r) for r in M.entries]
    entries.insert(k - 1, list(row))
    return LoopMatrix(M.n + 1, M.m, entries)
