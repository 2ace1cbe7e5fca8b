"""Factor a totally nonnegative periodic matrix into a cylindrical network.

The matrix is peeled from both sides: M = L1 ... Lk * cur * Rk ... R1, where
every L and R is the weight matrix of a small network.  Each step is checked
on the spot with ``loop_mul``.  When ``cur`` collapses to a single diagonal
(or to zero) the pieces are glued and the result is certified by recomputing
its weight matrix.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .core import LaurentPoly, LoopMatrix, loop_mul, split_index, unfold_entry
from .network import (CylNetwork, concatenate_all, diagonal_base_network,
                      elementary_row_network, elementary_up_network, empty_network,
                      folded_weight_matrix, row_deletion_network, transpose_network)
from .whirl import insert_row, whirl_row
from .tncheck import (CornerLocation, MinorWitness, find_special_sw_corner, is_tn_window,
                      scan_solid,
                      zero_cols, zero_rows)

MAX_STEPS = 2000


class NotTotallyNonnegative(Exception):
    def __init__(self, witness: MinorWitness, message: str = ""):
        self.witness = witness
        super().__init__(message or f"negative minor {witness.value} at rows "
                                    f"{list(witness.rows)}, cols {list(witness.cols)}")


class FactorizationStuck(Exception):
    """The algorithm could not proceed and no negative minor was found."""

    def __init__(self, message: str, state: LoopMatrix | None = None):
        self.state = state
        super().__init__(message)


@dataclass
class FactorStep:
    kind: str  # corner_elim, nonspecial_elim, row_delete, col_delete, row_insert, base_diagonal
    side: str  # "left", "right" or "base"
    network_piece: CylNetwork
    resulting_matrix: LoopMatrix
    detail: dict = field(default_factory=dict)


@dataclass
class FactorResult:
    steps: list[FactorStep]
    network: CylNetwork
    certified: bool


def certify(M: LoopMatrix, N: CylNetwork) -> bool:
    if any(e.weight < 0 for e in N.edges):
        return False
    if (N.n, N.m) != (M.n, M.m):
        return False
    return folded_weight_matrix(N) == M


# -- elementary moves on the folded matrix ------------------------------------

def _row_combination(M: LoopMatrix, k: int, other: int, c: Fraction, shift: int) -> LoopMatrix:
    """Row k minus c * t**shift * row other."""
    rows = [list(r) for r in M.entries]
    rows[k - 1] = [a - b.shift(shift) * c for a, b in zip(rows[k - 1], rows[other - 1])]
    return M.with_entries(rows)


def eliminate_corner(M: LoopMatrix, corner: CornerLocation) -> tuple[CylNetwork, LoopMatrix]:
    """Subtract ``c = a0/b0`` times the row above from every row congruent to i*.

    Returns ``(R, M')`` with ``M = W(R) * M'``.
    """
    if M.n < 2:
        raise ValueError("row operations need at least two rows per period")
    if corner.b0 == 0:
        raise ValueError("pivot above the corner is zero")
    c = corner.c
    if c < 0:
        I, J = corner.i_star, corner.j_star
        bad = (I, J) if corner.a0 < 0 else (I - 1, J)
        raise NotTotallyNonnegative(MinorWitness((bad[0],), (bad[1],), unfold_entry(M, *bad)))
    k, _ = split_index(corner.i_star, M.n)
    if k >= 2:
        Mp = _row_combination(M, k, k - 1, c, 0)
    else:
        # the row above row 1 is row n of the previous block
        Mp = _row_combination(M, 1, M.n, c, -1)
    return elementary_row_network(M.n, k, c), Mp


def find_special_ne_corner(M: LoopMatrix) -> CornerLocation | None:
    """Mirror image of the SW corner: first row of a run of rows sharing the
    same rightmost nonzero column.  ``a0`` is the entry to clear and ``b0`` the
    pivot below it."""
    def rightmost(I: int) -> int:
        i, r = split_index(I, M.n)
        return max(j + d * M.m for j, p in enumerate(M.entries[i - 1], 1)
                   for d in p.degrees()) + r * M.m

    for i in range(1, M.n + 1):
        if rightmost(i) != rightmost(i + 1):
            continue
        start = i
        while rightmost(start - 1) == rightmost(start):
            start -= 1
        if start < 1:
            start += M.n
        j = rightmost(start)
        return CornerLocation(start, j, unfold_entry(M, start, j), unfold_entry(M, start + 1, j))
    return None


def eliminate_ne_corner(M: LoopMatrix, corner: CornerLocation) -> tuple[CylNetwork, LoopMatrix]:
    c = corner.c
    if c < 0:
        I, J = corner.i_star, corner.j_star
        bad = (I, J) if corner.a0 < 0 else (I + 1, J)
        raise NotTotallyNonnegative(MinorWitness((bad[0],), (bad[1],), unfold_entry(M, *bad)))
    k, _ = split_index(corner.i_star, M.n)
    if k < M.n:
        Mp = _row_combination(M, k, k + 1, c, 0)
    else:
        Mp = _row_combination(M, M.n, 1, c, 1)
    return elementary_up_network(M.n, k, c), Mp


def _drop_row(M: LoopMatrix, k: int) -> LoopMatrix:
    return LoopMatrix(M.n - 1, M.m, [r for i, r in enumerate(M.entries, 1) if i != k])


def _band(M: LoopMatrix) -> tuple[int, int] | None:
    """Smallest and largest J - I over the support of a square unfolding."""
    if M.n != M.m:
        return None
    offs = [j + d * M.m - i for i, row in enumerate(M.entries, 1)
            for j, p in enumerate(row, 1) for d in p.degrees()]
    return (min(offs), max(offs)) if offs else None


def _diagonal(M: LoopMatrix, D: int) -> list[Fraction]:
    return [unfold_entry(M, i, i + D) for i in range(1, M.n + 1)]


def _first_negative(M: LoopMatrix) -> MinorWitness | None:
    for i, row in enumerate(M.entries, 1):
        for j, p in enumerate(row, 1):
            for d in p.degrees():
                if p.coeff(d) < 0:
                    return MinorWitness((i,), (j + d * M.m,), p.coeff(d))
    return None


def _derivative_row(M: LoopMatrix) -> LoopMatrix:
    """For a 1x1 matrix [[t^d q]] with q(0) != 0, the 2x1 matrix [[t^d q'], [t^d q]]."""
    p = M.entries[0][0]
    d = p.min_deg()
    q = p.shift(-d)
    dq = LaurentPoly({k - 1: k * v for k, v in q.coeffs.items() if k != 0})
    return LoopMatrix(2, 1, [[dq.shift(d)], [p]])


def _local_witness(M: LoopMatrix, corner: CornerLocation, Mp: LoopMatrix,
                   above: bool = True) -> MinorWitness | None:
    """A negative entry of the eliminated matrix yields a negative 2x2 minor of M."""
    neg = _first_negative(Mp)
    if neg is None:
        return None
    I, J = neg.rows[0], neg.cols[0]
    shift = (I - corner.i_star) // M.n
    jc = corner.j_star + shift * M.m
    if above:
        rows, cols = (I - 1, I), (jc, J) if jc < J else (J, jc)
    else:
        rows, cols = (I, I + 1), (J, jc) if J < jc else (jc, J)
    if len(set(cols)) < 2:
        return None
    from .core import window, determinant
    v = determinant(window(M, rows, cols))
    return MinorWitness(rows, cols, v) if v < 0 else None


# -- the driver ---------------------------------------------------------------------

class _Peeler:
    def __init__(self, M: LoopMatrix, trace: Callable[[str], None] | None):
        self.input = M
        self.cur = M
        self.left: list[CylNetwork] = []
        self.right: list[CylNetwork] = []
        self.steps: list[FactorStep] = []
        self.trace = trace

    def log(self, msg: str):
        if self.trace:
            self.trace(msg)

    def push(self, kind: str, side: str, piece: CylNetwork, new: LoopMatrix, **detail):
        W = folded_weight_matrix(piece)
        expect = loop_mul(W, new) if side == "left" else loop_mul(new, W)
        if expect != self.cur:
            raise AssertionError(f"local factorization identity failed at step {kind}")
        (self.left if side == "left" else self.right).append(piece)
        self.steps.append(FactorStep(kind, side, piece, new, detail))
        shown = " ".join(f"{k}={v}" for k, v in detail.items())
        self.log(f"{kind:16s} {side:5s} {shown} -> {new.n}x{new.m}")
        self.cur = new

    def fail(self, local: MinorWitness | None, why: str):
        if local is not None and self.cur is self.input:
            raise NotTotallyNonnegative(local)
        if local is not None and not self.steps:
            raise NotTotallyNonnegative(local)
        w = search_witness(self.input)
        if w is not None:
            raise NotTotallyNonnegative(w)
        raise FactorizationStuck(why, self.cur)

    def elim_rows(self, M: LoopMatrix, transposed: bool) -> bool:
        """One special-corner elimination on M (already oriented)."""
        corner = find_special_sw_corner(M)
        kind = "corner_elim"
        if corner is None and M.n == M.m:
            corner = find_special_ne_corner(M)
            kind = "nonspecial_elim"
        if corner is None:
            return False
        try:
            if kind == "corner_elim":
                R, Mp = eliminate_corner(M, corner)
            else:
                R, Mp = eliminate_ne_corner(M, corner)
        except NotTotallyNonnegative as exc:
            self.fail(_orient(exc.witness, transposed), "negative pivot ratio")
        if not Mp.is_nonnegative():
            self.fail(_orient(_local_witness(M, corner, Mp, kind == "corner_elim"), transposed),
                      "elimination produced a negative entry")
        detail = {"corner": (corner.i_star, corner.j_star), "c": corner.c}
        if transposed:
            self.push(kind, "right", transpose_network(R), Mp.transpose(), transposed=True,
                      **detail)
        else:
            self.push(kind, "left", R, Mp, **detail)
        return True

    def insert_whirl_row(self, M: LoopMatrix) -> bool:
        for k in range(1, M.n + 1):
            row = whirl_row(M, k)
            if row is not None:
                self.push("row_insert", "left", row_deletion_network(M.n + 1, k),
                          insert_row(M, k, row), row=k)
                return True
        return False

    def run(self) -> FactorResult:
        neg = _first_negative(self.cur)
        if neg is not None:
            raise NotTotallyNonnegative(neg)
        for _ in range(MAX_STEPS):
            M = self.cur
            if M.is_zero():
                base = empty_network(M.n, M.m)
                self.steps.append(FactorStep("base_diagonal", "base", base, M, {"zero": True}))
                return self.finish(base)
            zr = zero_rows(M)
            if zr and M.n > 1:
                k = zr[0]
                self.push("row_delete", "left", transpose_network(row_deletion_network(M.n, k)),
                          _drop_row(M, k), row=k)
                continue
            zc = zero_cols(M)
            if zc and M.m > 1:
                k = zc[0]
                self.push("col_delete", "right", row_deletion_network(M.m, k),
                          _drop_row(M.transpose(), k).transpose(), col=k)
                continue
            band = _band(M)
            if band is not None and band[1] - band[0] <= 1:
                lo, hi = band
                upper = _diagonal(M, hi) if hi > lo else None
                base = diagonal_base_network(_diagonal(M, lo), lo, upper)
                kind = "base_diagonal" if upper is None else "base_bidiagonal"
                self.steps.append(FactorStep(kind, "base", base, M, {"shift": lo}))
                self.log(f"{kind:16s} shift={lo}")
                return self.finish(base)
            if M.n >= M.m:
                if M.n >= 2 and self.elim_rows(M, transposed=False):
                    continue
            else:
                if self.elim_rows(M.transpose(), transposed=True):
                    continue
            if M.n == M.m == 1:
                new = _derivative_row(M)
                self.push("row_insert", "left", row_deletion_network(2, 1), new)
                continue
            if M.n == M.m and self.insert_whirl_row(M):
                continue
            self.fail(None, f"no eliminable corner in a {M.n}x{M.m} staircase")
        raise FactorizationStuck("step limit reached", self.cur)

    def finish(self, base: CylNetwork) -> FactorResult:
        net = concatenate_all(self.left + [base] + self.right[::-1])
        ok = certify(self.input, net)
        if not ok:
            raise AssertionError("assembled network does not reproduce the input")
        return FactorResult(self.steps, net, ok)


def _orient(w: MinorWitness | None, transposed: bool) -> MinorWitness | None:
    if w is None or not transposed:
        return w
    return MinorWitness(w.cols, w.rows, w.value)


def search_witness(M: LoopMatrix, max_span: int = 4, max_order: int = 4,
                   deep_rows: int = 8, solid_order: int = 14) -> MinorWitness | None:
    """Scan growing windows for a negative minor.

    After the cheap scan, windows with at most ``deep_rows`` rows are searched
    with larger orders, then contiguous minors up to ``solid_order`` are
    tried.
    """
    for span in range(1, max_span + 1):
        w = is_tn_window(M, row_span=span, max_order=min(max_order, span * M.n))
        if w is not None:
            return w
    span = max_span + 1
    while span * M.n <= deep_rows:
        w = is_tn_window(M, row_span=span, max_order=min(span * M.n, 7))
        if w is not None:
            return w
        span += 1
    span = -(-solid_order // M.n) + 1
    return scan_solid(M, span, solid_order)


def factor(M: LoopMatrix, trace: Callable[[str], None] | None = None) -> FactorResult:
    """Factor M into a network with nonnegative weights, or refute total nonnegativity."""
    return _Peeler(M, trace).run()
