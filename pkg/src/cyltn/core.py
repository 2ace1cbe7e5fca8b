"""Exact scalars, Laurent polynomials and folded periodic matrices.

An (n, m)-periodic block-Toeplitz matrix is stored in folded form: an n x m
grid whose (i, j) entry is a Laurent polynomial in ``t``.  The coefficient of
``t**d`` in entry (i, j) is the (i, j) entry of block diagonal ``d``.  Global
indices into the infinite matrix are 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

Rational = Fraction


def to_rational(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/4"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or string")
    return Fraction(x)


def rational_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class LaurentPoly:
    """Sparse Laurent polynomial with Fraction coefficients.  Immutable."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        for d, v in (coeffs or {}).items():
            v = to_rational(v)
            if v:
                c[int(d)] = v
        self._c = c
        self._hash = None

    @classmethod
    def const(cls, v) -> LaurentPoly:
        return cls({0: v})

    @classmethod
    def monomial(cls, deg: int, v=1) -> LaurentPoly:
        return cls({deg: v})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, low: int = 0) -> LaurentPoly:
        """Build from a dense coefficient list starting at degree ``low``."""
        return cls({low + k: v for k, v in enumerate(coeffs)})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def coeff(self, d: int) -> Fraction:
        return self._c.get(d, Fraction(0))

    def degrees(self) -> list[int]:
        return sorted(self._c)

    def min_deg(self) -> int | None:
        return min(self._c) if self._c else None

    def max_deg(self) -> int | None:
        return max(self._c) if self._c else None

    def is_zero(self) -> bool:
        return not self._c

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self._c.values())

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``t**k``."""
        return LaurentPoly({d + k: v for d, v in self._c.items()})

    def invert_t(self) -> LaurentPoly:
        """Substitute ``t -> 1/t``."""
        return LaurentPoly({-d: v for d, v in self._c.items()})

    def __add__(self, other) -> LaurentPoly:
        other = _lift(other)
        c = dict(self._c)
        for d, v in other._c.items():
            c[d] = c.get(d, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({d: -v for d, v in self._c.items()})

    def __sub__(self, other) -> LaurentPoly:
        return self + (-_lift(other))

    def __rsub__(self, other) -> LaurentPoly:
        return _lift(other) - self

    def __mul__(self, other) -> LaurentPoly:
        other = _lift(other)
        c: dict[int, Fraction] = {}
        for (d1, v1), (d2, v2) in product(self._c.items(), other._c.items()):
            c[d1 + d2] = c.get(d1 + d2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for d in sorted(self._c):
            v = self._c[d]
            if d == 0:
                parts.append(rational_str(v))
                continue
            mono = "t" if d == 1 else f"t^{d}"
            if v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{rational_str(v)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict[str, str]:
        return {str(d): rational_str(self._c[d]) for d in sorted(self._c)}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> LaurentPoly:
        return cls({int(k): Fraction(v) for k, v in obj.items()})


def _lift(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly.const(x)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
T = LaurentPoly.monomial(1)


@dataclass(frozen=True)
class DenseMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def of(cls, rows: Iterable[Iterable]) -> DenseMatrix:
        ent = tuple(tuple(to_rational(x) for x in r) for r in rows)
        ncols = len(ent[0]) if ent else 0
        return cls(len(ent), ncols, ent)

    @classmethod
    def empty(cls, rows: int = 0, cols: int = 0) -> DenseMatrix:
        return cls(rows, cols, tuple(() for _ in range(rows)) if cols == 0 else
                   tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows)))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def sub(self, rows: Sequence[int], cols: Sequence[int]) -> DenseMatrix:
        """Submatrix by 0-based row and column positions (duplicates allowed)."""
        return DenseMatrix(len(rows), len(cols),
                           tuple(tuple(self.entries[r][c] for c in cols) for r in rows))

    def transpose(self) -> DenseMatrix:
        return DenseMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                           tuple(() for _ in range(self.cols)))

    def __matmul__(self, other: DenseMatrix) -> DenseMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return DenseMatrix(self.rows, other.cols, tuple(
            tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols)
            for r in self.entries))

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[rational_str(x) for x in r] for r in self.entries]}

    @classmethod
    def from_json(cls, obj: Mapping) -> DenseMatrix:
        d = cls.of(obj["entries"])
        if obj["rows"] == 0:
            return cls.empty(0, obj.get("cols", 0))
        if (d.rows, d.cols) != (obj["rows"], obj["cols"]):
            raise ValueError("declared shape disagrees with entries")
        return d


def determinant(D: DenseMatrix) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    if D.rows != D.cols:
        raise ValueError(f"determinant of a non-square {D.rows}x{D.cols} matrix")
    a = D.tolist()
    n = D.rows
    det = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for r in range(k + 1, n):
            f = a[r][k] * inv
            if f:
                row_k = a[k]
                a[r] = [x - f * y for x, y in zip(a[r], row_k)]
    return det


class LoopMatrix:
    """Folded form of an (n, m)-periodic infinite matrix."""

    __slots__ = ("n", "m", "entries")

    def __init__(self, n: int, m: int, entries: Sequence[Sequence]):
        if n < 1 or m < 1:
            raise ValueError("periods must be positive")
        grid = tuple(tuple(_lift(x) for x in row) for row in entries)
        if len(grid) != n or any(len(r) != m for r in grid):
            raise ValueError("entries do not match the declared shape")
        self.n, self.m, self.entries = n, m, grid

    @classmethod
    def identity(cls, n: int) -> LoopMatrix:
        return cls(n, n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_blocks(cls, blocks: Mapping[int, Sequence[Sequence]]) -> LoopMatrix:
        """Fold a map ``d -> A_d`` of equally sized blocks."""
        first = next(iter(blocks.values()))
        n, m = len(first), len(first[0])
        grid = [[{} for _ in range(m)] for _ in range(n)]
        for d, A in blocks.items():
            for i in range(n):
                for j in range(m):
                    grid[i][j][d] = A[i][j]
        return cls(n, m, [[LaurentPoly(c) for c in row] for row in grid])

    def __getitem__(self, ij) -> LaurentPoly:
        """Folded entry, 1-based ``(i, j)``."""
        i, j = ij
        return self.entries[i - 1][j - 1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LoopMatrix):
            return NotImplemented
        return (self.n, self.m, self.entries) == (other.n, other.m, other.entries)

    def __hash__(self) -> int:
        return hash((self.n, self.m, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(p) for p in row) for row in self.entries)
        return f"LoopMatrix({self.n}x{self.m}: [{body}])"

    def __matmul__(self, other: LoopMatrix) -> LoopMatrix:
        return loop_mul(self, other)

    def block(self, d: int) -> list[list[Fraction]]:
        return [[p.coeff(d) for p in row] for row in self.entries]

    def degree_range(self) -> tuple[int, int] | None:
        degs = [d for row in self.entries for p in row for d in p.degrees()]
        return (min(degs), max(degs)) if degs else None

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def is_nonnegative(self) -> bool:
        return all(p.is_nonnegative() for row in self.entries for p in row)

    def transpose(self) -> LoopMatrix:
        """Transpose of the infinite matrix: swap periods and invert ``t``."""
        return LoopMatrix(self.m, self.n,
                          [[self.entries[i][j].invert_t() for i in range(self.n)]
                           for j in range(self.m)])

    def with_entries(self, entries) -> LoopMatrix:
        return LoopMatrix(self.n, self.m, entries)

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m,
                "entries": [[p.to_json() for p in row] for row in self.entries]}

    @classmethod
    def from_json(cls, obj: Mapping) -> LoopMatrix:
        return cls(obj["n"], obj["m"],
                   [[LaurentPoly.from_json(p) for p in row] for row in obj["entries"]])


def split_index(I: int, period: int) -> tuple[int, int]:
    """Global 1-based index to (residue in 1..period, block offset)."""
    i = (I - 1) % period + 1
    return i, (I - i) // period


def unfold_entry(M: LoopMatrix, I: int, J: int) -> Fraction:
    i, r = split_index(I, M.n)
    j, s = split_index(J, M.m)
    return M.entries[i - 1][j - 1].coeff(s - r)


def window(M: LoopMatrix, rows: Sequence[int], cols: Sequence[int]) -> DenseMatrix:
    return DenseMatrix(len(rows), len(cols),
                       tuple(tuple(unfold_entry(M, I, J) for J in cols) for I in rows))


def fold(entry, n: int, m: int, low: int, high: int) -> LoopMatrix:
    """Fold a periodic matrix given as a function of global indices.

    Only block diagonals ``low..high`` are read; the caller vouches that the
    rest vanish.
    """
    grid = [[LaurentPoly({d: entry(i, j + d * m) for d in range(low, high + 1)})
             for j in range(1, m + 1)] for i in range(1, n + 1)]
    return LoopMatrix(n, m, grid)


def loop_mul(A: LoopMatrix, B: LoopMatrix) -> LoopMatrix:
    if A.m != B.n:
        raise ValueError(f"cannot multiply {A.n}x{A.m} by {B.n}x{B.m}")
    grid = []
    for i in range(A.n):
        row = []
        for j in range(B.m):
            acc = ZERO
            for k in range(A.m):
                a, b = A.entries[i][k], B.entries[k][j]
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            row.append(acc)
        grid.append(row)
    return LoopMatrix(A.n, B.m, grid)


def loop_add(A: LoopMatrix, B: LoopMatrix) -> LoopMatrix:
    if (A.n, A.m) != (B.n, B.m):
        raise ValueError("shape mismatch")
    return LoopMatrix(A.n, A.m, [[a + b for a, b in zip(ra, rb)]
                                 for ra, rb in zip(A.entries, B.entries)])
