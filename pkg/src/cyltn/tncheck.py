"""Finite-window nonnegativity scans, convex support and SW corners."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .core import DenseMatrix, LoopMatrix, determinant, rational_str, to_rational, unfold_entry


@dataclass(frozen=True)
class MinorWitness:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    value: Fraction

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols),
                "value": rational_str(self.value)}


@dataclass(frozen=True)
class CornerLocation:
    i_star: int
    j_star: int
    a0: Fraction
    b0: Fraction

    @property
    def c(self) -> Fraction:
        return self.a0 / self.b0


def _small_det(rows) -> Fraction:
    k = len(rows)
    if k == 1:
        return rows[0][0]
    if k == 2:
        (a, b), (c, d) = rows
        return a * d - b * c
    if k == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return determinant(DenseMatrix.of(rows))


def scan_window(M: LoopMatrix, rows: Sequence[int], cols: Sequence[int],
                max_order: int) -> MinorWitness | None:
    """First negative minor of order <= max_order over the given index ranges.

    Order is lexicographic by (order, row set, column set).  Column sets that
    include a column vanishing on the chosen rows are skipped since such
    minors are zero.
    """
    grid = {(I, J): unfold_entry(M, I, J) for I in rows for J in cols}
    for k in range(1, max_order + 1):
        for R in combinations(rows, k):
            live = [J for J in cols if any(grid[I, J] for I in R)]
            for C in combinations(live, k):
                v = _small_det([[grid[I, J] for J in C] for I in R])
                if v < 0:
                    return MinorWitness(R, C, v)
    return None


def is_tn_window(M: LoopMatrix, row_span: int = 3, max_order: int | None = None
                 ) -> MinorWitness | None:
    """Search a finite window of the unfolding for a negative minor.

    Returns a witness, or None when every scanned minor is nonnegative.  None
    is not a proof of total nonnegativity.  Rows start at the first period
    whose support lies entirely in positive columns.
    """
    if row_span < 1:
        raise ValueError("row_span must be positive")
    if max_order is None:
        max_order = min(4, M.n * row_span)
    if max_order < 1:
        raise ValueError("max_order must be positive")
    rng = M.degree_range()
    if rng is None:
        return None
    lo, hi = rng
    width = hi - lo + 1
    base = max(0, -lo)
    rows = range(base * M.n + 1, (base + row_span) * M.n + 1)
    cols = range(1, (base + row_span + width) * M.m + 1)
    return scan_window(M, list(rows), list(cols), max_order)


def scan_solid(M: LoopMatrix, row_span: int, max_order: int) -> MinorWitness | None:
    """Negative minors on consecutive rows and consecutive columns only.

    Far cheaper than a full scan, so much larger orders are affordable.  Such
    minors detect the high-order failures of near-miss inputs.
    """
    rng = M.degree_range()
    if rng is None:
        return None
    lo, hi = rng
    base = max(0, -lo)
    first = base * M.n + 1
    rows = list(range(first, first + row_span * M.n))
    cols = list(range(1, (base + row_span + hi - lo + 1) * M.m + 1))
    grid = {(I, J): unfold_entry(M, I, J) for I in rows for J in cols}
    for k in range(2, max_order + 1):
        for r0 in range(len(rows) - k + 1):
            R = rows[r0:r0 + k]
            for c0 in range(len(cols) - k + 1):
                C = cols[c0:c0 + k]
                if not any(grid[R[0], J] for J in C) or not any(grid[I, C[0]] for I in R):
                    continue
                v = determinant(DenseMatrix.of([[grid[I, J] for J in C] for I in R]))
                if v < 0:
                    return MinorWitness(tuple(R), tuple(C), v)
    return None


def _row_values(M: LoopMatrix, i: int) -> dict[int, Fraction]:
    """Nonzero entries of unfolded row ``i`` (1 <= i <= n), keyed by column."""
    out = {}
    for j, p in enumerate(M.entries[i - 1], 1):
        for d, v in p.coeffs.items():
            out[j + d * M.m] = v
    return out


def _col_values(M: LoopMatrix, j: int) -> dict[int, Fraction]:
    out = {}
    for i in range(1, M.n + 1):
        for d, v in M.entries[i - 1][j - 1].coeffs.items():
            out[i - d * M.n] = v
    return out


def _gapless(vals: dict[int, Fraction]) -> bool:
    return not vals or len(vals) == max(vals) - min(vals) + 1


def convex_support(M: LoopMatrix) -> bool:
    """No internal zeros along any row or column of the unfolding."""
    return (all(_gapless(_row_values(M, i)) for i in range(1, M.n + 1))
            and all(_gapless(_col_values(M, j)) for j in range(1, M.m + 1)))


def zero_rows(M: LoopMatrix) -> list[int]:
    return [i for i in range(1, M.n + 1) if all(p.is_zero() for p in M.entries[i - 1])]


def zero_cols(M: LoopMatrix) -> list[int]:
    return [j for j in range(1, M.m + 1)
            if all(M.entries[i][j - 1].is_zero() for i in range(M.n))]


def leftmost(M: LoopMatrix, I: int) -> int:
    i = (I - 1) % M.n + 1
    r = (I - i) // M.n
    return min(_row_values(M, i)) + r * M.m


def find_special_sw_corner(M: LoopMatrix) -> CornerLocation | None:
    """A row ``i`` with ``l(i-1) == l(i) < l(i+1)``, where ``l`` is the leftmost
    nonzero column, reported with ``2 <= i <= n+1``.  Returns None when ``l``
    is strictly increasing."""
    if zero_rows(M):
        raise ValueError("matrix has an all-zero row")
    n = M.n
    ell = {i: leftmost(M, i) for i in range(1, 2 * n + 3)}
    for i in range(n + 1, 1, -1):
        if ell[i - 1] != ell[i]:
            continue
        end = i
        while ell[end + 1] == ell[end]:
            end += 1
        if end > n + 1:
            end -= n
        j = ell[end]
        return CornerLocation(end, j, unfold_entry(M, end, j), unfold_entry(M, end - 1, j))
    return None


def is_sw_corner(M: LoopMatrix, i: int, j: int, *, special: bool = False) -> bool:
    """Check the corner definition directly on the bounded region where the
    below-left quadrant can be nonzero."""
    rng = M.degree_range()
    if rng is None or unfold_entry(M, i, j) == 0:
        return False
    lo, hi = rng
    top = i - 1 if special else i
    # an entry (I, J) can be nonzero only if its block offset lies in [lo, hi]
    r_top = (top - 1) // M.n
    s_max = (j - 1) // M.m
    J_min = (r_top + lo - 1) * M.m + 1
    I_max = (s_max - lo + 2) * M.n
    for I in range(top, I_max + 1):
        for J in range(J_min, j + 1):
            if (I, J) in ((i, j), (i - 1, j)):
                continue
            if unfold_entry(M, I, J) != 0:
                return False
    return True


def lw_generator(size: int, kind: str, position: int, value) -> DenseMatrix:
    """Elementary TN generator: identity plus one off-diagonal entry, or identity
    with one diagonal entry replaced."""
    value = to_rational(value)
    if value < 0:
        raise ValueError("generator value must be nonnegative")
    rows = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    if kind == "diagonal":
        if not 1 <= position <= size:
            raise IndexError("position out of range")
        rows[position - 1][position - 1] = value
    elif kind in ("upper", "lower"):
        if not 1 <= position < size:
            raise IndexError("position out of range")
        a, b = (position - 1, position) if kind == "upper" else (position, position - 1)
        rows[a][b] = value
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    return DenseMatrix.of(rows)
