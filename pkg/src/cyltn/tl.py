"""Temperley-Lieb algebra, Temperley-Lieb immanants and complementary minor diagrams.

Points of a diagram on 2n dots are numbered 1..n down the left column and
n+1..2n down the right column.  Products glue the right column of the first
factor to the left column of the second.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import prod
from typing import Iterable, Mapping, Sequence

from .core import DenseMatrix, LaurentPoly, LoopMatrix, determinant, unfold_entry, window
from .tncheck import CornerLocation

BLACK, WHITE, GRAY = "black", "white", "gray"


# -- matchings ---------------------------------------------------------------

def _circle_pos(p: int, n: int) -> int:
    # left column top-down, then right column bottom-up
    return p - 1 if p <= n else 3 * n - p


@dataclass(frozen=True)
class NcMatching:
    n: int
    mate: tuple[int, ...]  # mate[p-1] is the partner of point p

    def __post_init__(self):
        if len(self.mate) != 2 * self.n:
            raise ValueError("mate table has the wrong length")
        for p, q in enumerate(self.mate, 1):
            if q == p or self.mate[q - 1] != p:
                raise ValueError("not a fixed-point-free involution")
        arcs = [tuple(sorted((_circle_pos(p, self.n), _circle_pos(q, self.n))))
                for p, q in self.pairs()]
        for (a, b), (c, d) in combinations(arcs, 2):
            if a < c < b < d or c < a < d < b:
                raise ValueError("matching is not noncrossing")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Iterable[int]]) -> NcMatching:
        mate = [0] * (2 * n)
        for p, q in pairs:
            mate[p - 1], mate[q - 1] = q, p
        return cls(n, tuple(mate))

    @classmethod
    def identity(cls, n: int) -> NcMatching:
        return cls.from_pairs(n, [(k, n + k) for k in range(1, n + 1)])

    def pairs(self) -> list[tuple[int, int]]:
        return [(p, q) for p, q in enumerate(self.mate, 1) if p < q]

    def __repr__(self) -> str:
        return "NcMatching(" + " ".join(f"{{{p},{q}}}" for p, q in self.pairs()) + ")"


def tl_generator(n: int, i: int) -> NcMatching:
    if not 1 <= i <= n - 1:
        raise ValueError(f"t_{i} does not exist in TL_{n}")
    pairs = [(i, i + 1), (n + i, n + i + 1)]
    pairs += [(k, n + k) for k in range(1, n + 1) if k not in (i, i + 1)]
    return NcMatching.from_pairs(n, pairs)


def compose(a: NcMatching, b: NcMatching) -> tuple[NcMatching, int]:
    """Glue ``a`` to the left of ``b``; return the reduced diagram and loop count."""
    if a.n != b.n:
        raise ValueError("size mismatch")
    n = a.n
    # nodes: ("a", p) and ("b", p); a's right point n+k is glued to b's left point k
    def step(node):
        side, p = node
        m = (a if side == "a" else b).mate[p - 1]
        return side, m

    def glue(node):
        side, p = node
        if side == "a" and p > n:
            return ("b", p - n)
        if side == "b" and p <= n:
            return ("a", p + n)
        return None

    def outer(node) -> int | None:
        side, p = node
        if side == "a" and p <= n:
            return p
        if side == "b" and p > n:
            return p
        return None

    mate = [0] * (2 * n)
    seen = set()
    for start in [("a", p) for p in range(1, n + 1)] + [("b", p) for p in range(n + 1, 2 * n + 1)]:
        if start in seen:
            continue
        node = start
        seen.add(node)
        while True:
            node = step(node)
            seen.add(node)
            if outer(node) is not None:
                break
            node = glue(node)
            seen.add(node)
        s, e = outer(start), outer(node)
        mate[s - 1], mate[e - 1] = e, s
    loops = 0
    for p in range(n + 1, 2 * n + 1):
        node = ("a", p)
        if node in seen:
            continue
        loops += 1
        while node not in seen:
            seen.add(node)
            node = step(node)
            seen.add(node)
            node = glue(node)
    return NcMatching(n, tuple(mate)), loops


@lru_cache(maxsize=None)
def tl_basis(n: int) -> tuple[NcMatching, ...]:
    """All noncrossing perfect matchings on 2n points."""
    if n < 1:
        raise ValueError("n must be positive")
    order = list(range(1, n + 1)) + list(range(2 * n, n, -1))  # circle order of points

    def rec(pts: tuple[int, ...]):
        if not pts:
            yield []
            return
        first = pts[0]
        for k in range(1, len(pts), 2):
            for inner in rec(pts[1:k]):
                for outer in rec(pts[k + 1:]):
                    yield [(first, pts[k])] + inner + outer

    return tuple(NcMatching.from_pairs(n, ps) for ps in rec(tuple(order)))


# -- the algebra ----------------------------------------------------------------

class TlElement:
    """Finite linear combination of matchings with coefficients in Q[xi]."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[NcMatching, LaurentPoly] | None = None):
        self.n = n
        self.terms = {T: c for T, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def basis(cls, T: NcMatching, coeff=1) -> TlElement:
        return cls(T.n, {T: LaurentPoly.const(coeff)})

    @classmethod
    def one(cls, n: int) -> TlElement:
        return cls.basis(NcMatching.identity(n))

    @classmethod
    def gen(cls, n: int, i: int) -> TlElement:
        return cls.basis(tl_generator(n, i))

    def __add__(self, other: TlElement) -> TlElement:
        terms = dict(self.terms)
        for T, c in other.terms.items():
            terms[T] = terms.get(T, LaurentPoly()) + c
        return TlElement(self.n, terms)

    def __neg__(self) -> TlElement:
        return TlElement(self.n, {T: -c for T, c in self.terms.items()})

    def __sub__(self, other: TlElement) -> TlElement:
        return self + (-other)

    def scale(self, c) -> TlElement:
        return TlElement(self.n, {T: v * c for T, v in self.terms.items()})

    def __mul__(self, other: TlElement) -> TlElement:
        return tl_multiply(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, TlElement) and self.n == other.n and self.terms == other.terms

    def __repr__(self) -> str:
        return " + ".join(f"({c})*{T}" for T, c in self.terms.items()) or "0"

    def coeff(self, T: NcMatching) -> LaurentPoly:
        return self.terms.get(T, LaurentPoly())


XI = LaurentPoly.monomial(1)


def tl_multiply(a: TlElement, b: TlElement) -> TlElement:
    if a.n != b.n:
        raise ValueError("size mismatch")
    out: dict[NcMatching, LaurentPoly] = {}
    for Ta, ca in a.terms.items():
        for Tb, cb in b.terms.items():
            T, loops = compose(Ta, Tb)
            out[T] = out.get(T, LaurentPoly()) + (ca * cb).shift(loops)
    return TlElement(a.n, out)


# -- permutations and phi ------------------------------------------------------

Perm = tuple[int, ...]  # one-line notation, values 1..n


def left_descents(w: Perm) -> list[int]:
    pos = {v: k for k, v in enumerate(w)}
    return [j for j in range(1, len(w)) if pos[j + 1] < pos[j]]


def _left_mul(j: int, w: Perm) -> Perm:
    # s_j o w swaps the values j and j+1
    return tuple(j + 1 if v == j else j if v == j + 1 else v for v in w)


def word_to_perm(word: Sequence[int], n: int) -> Perm:
    w = tuple(range(1, n + 1))
    for j in reversed(word):
        w = _left_mul(j, w)
    return w


def inversions(w: Perm) -> int:
    return sum(1 for a, b in combinations(w, 2) if a > b)


def reduced_word(w: Sequence[int]) -> list[int]:
    """Lexicographically least reduced word: peel off the smallest left descent."""
    w = tuple(w)
    word = []
    while True:
        d = left_descents(w)
        if not d:
            return word
        word.append(d[0])
        w = _left_mul(d[0], w)


def all_reduced_words(w: Sequence[int]) -> list[list[int]]:
    w = tuple(w)
    d = left_descents(w)
    if not d:
        return [[]]
    return [[j] + rest for j in d for rest in all_reduced_words(_left_mul(j, w))]


@lru_cache(maxsize=None)
def _gen_action(n: int, j: int, T: NcMatching) -> tuple[NcMatching, int]:
    return compose(tl_generator(n, j), T)


def expand_word(word: Sequence[int], n: int, xi=2) -> dict[NcMatching, Fraction]:
    """Coefficients of prod_k (t_{j_k} - 1) in TL_n(xi), xi a number."""
    cur = {NcMatching.identity(n): Fraction(1)}
    for j in reversed(word):
        cur = _apply_gen_minus_one(n, j, cur, xi)
    return cur


def _apply_gen_minus_one(n, j, vec, xi):
    out: dict[NcMatching, Fraction] = {}
    for T, c in vec.items():
        S, loops = _gen_action(n, j, T)
        out[S] = out.get(S, 0) + c * Fraction(xi) ** loops
        out[T] = out.get(T, 0) - c
    return {T: c for T, c in out.items() if c}


@lru_cache(maxsize=None)
def _phi_vector(w: Perm) -> dict[NcMatching, Fraction]:
    n = len(w)
    d = left_descents(w)
    if not d:
        return {NcMatching.identity(n): Fraction(1)}
    j = d[0]
    return _apply_gen_minus_one(n, j, _phi_vector(_left_mul(j, w)), 2)


def phi(T: NcMatching, w: Sequence[int]) -> Fraction:
    w = tuple(w)
    if len(w) != T.n:
        raise ValueError("size mismatch")
    return _phi_vector(w).get(T, Fraction(0))


@lru_cache(maxsize=None)
def _phi_table(n: int) -> tuple[tuple[Perm, dict[NcMatching, Fraction]], ...]:
    return tuple((w, _phi_vector(w)) for w in permutations(range(1, n + 1)))


def tl_immanant(T: NcMatching, M: DenseMatrix) -> Fraction:
    if M.rows != M.cols:
        raise ValueError("immanants need a square matrix")
    if M.rows != T.n:
        raise ValueError("matching size differs from matrix size")
    if M.rows == 0:
        return Fraction(1)
    total = Fraction(0)
    for w, vec in _phi_table(T.n):
        c = vec.get(T)
        if c:
            total += c * prod(M.entries[i][w[i] - 1] for i in range(T.n))
    return total


def all_immanants(M: DenseMatrix) -> dict[NcMatching, Fraction]:
    """imm_T(M) for every basis element at once."""
    n = M.rows
    out = {T: Fraction(0) for T in tl_basis(n)}
    for w, vec in _phi_table(n):
        mono = prod(M.entries[i][w[i] - 1] for i in range(n))
        if mono:
            for T, c in vec.items():
                out[T] += c * mono
    return out


def comp_minor_immanant(M: DenseMatrix, I: Iterable[int], J: Iterable[int]) -> Fraction:
    """det M[I, J] times the complementary minor; I, J are 1-based positions."""
    I, J = sorted(I), sorted(J)
    if len(I) != len(J):
        raise ValueError("row and column sets differ in size")
    if M.rows != M.cols:
        raise ValueError("matrix must be square")
    n = M.rows
    Ic = [i for i in range(1, n + 1) if i not in I]
    Jc = [j for j in range(1, n + 1) if j not in J]
    sub = lambda R, C: determinant(M.sub([r - 1 for r in R], [c - 1 for c in C]))
    return sub(I, J) * sub(Ic, Jc)


# -- complementary minor diagrams ---------------------------------------------

@dataclass(frozen=True)
class CmDiagram:
    left: tuple[str, ...]
    right: tuple[str, ...]

    def __post_init__(self):
        if len(self.left) != len(self.right):
            raise ValueError("columns differ in length")
        if self.left.count(BLACK) != self.right.count(WHITE):
            raise ValueError("black dots on the left must match white dots on the right")

    @property
    def size(self) -> int:
        return len(self.left)

    def row_set(self) -> list[int]:
        return [k for k, c in enumerate(self.right, 1) if c == WHITE]

    def col_set(self) -> list[int]:
        return [k for k, c in enumerate(self.left, 1) if c == BLACK]

    def evaluate(self, M: DenseMatrix) -> Fraction:
        return comp_minor_immanant(M, self.row_set(), self.col_set())


def cm_diagram(I: Iterable[int], J: Iterable[int], size: int) -> CmDiagram:
    I, J = set(I), set(J)
    if len(I) != len(J) or len(I) > size:
        raise ValueError("need |I| = |J| <= size")
    left = tuple(BLACK if j in J else WHITE for j in range(1, size + 1))
    right = tuple(WHITE if i in I else BLACK for i in range(1, size + 1))
    return CmDiagram(left, right)


def theta(D: CmDiagram) -> list[NcMatching]:
    """Matchings in which every strand joins a white dot to a black dot."""
    colors = D.left + D.right
    return [T for T in tl_basis(D.size)
            if all(colors[p - 1] != colors[q - 1] for p, q in T.pairs())]


def verify_rs(M: DenseMatrix, I: Iterable[int], J: Iterable[int]) -> bool:
    I, J = list(I), list(J)
    lhs = comp_minor_immanant(M, I, J)
    rhs = sum((tl_immanant(T, M) for T in theta(cm_diagram(I, J, M.rows))), Fraction(0))
    return lhs == rhs


# -- decorated diagrams and the delta machinery ----------------------------------

@dataclass(frozen=True)
class DecoratedCmDiagram:
    left: tuple[str, ...]
    right: tuple[str, ...]  # gray marks both dots of a block
    gray_blocks: tuple[int, ...]  # 1-based top positions, increasing

    def __post_init__(self):
        if len(self.left) != len(self.right):
            raise ValueError("columns differ in length")
        marked = set()
        for g in self.gray_blocks:
            if self.right[g - 1] != GRAY or self.right[g] != GRAY:
                raise ValueError("gray block is not marked gray")
            marked |= {g, g + 1}
        if marked != {k for k, c in enumerate(self.right, 1) if c == GRAY}:
            raise ValueError("gray dots must come in disjoint consecutive pairs")

    def specialize(self, chosen: Iterable[int]) -> CmDiagram:
        """Blocks whose top position is in ``chosen`` become black over white,
        the rest white over black."""
        chosen = set(chosen)
        right = list(self.right)
        for g in self.gray_blocks:
            top, bot = (BLACK, WHITE) if g in chosen else (WHITE, BLACK)
            right[g - 1], right[g] = top, bot
        return CmDiagram(self.left, tuple(right))

    def evaluate(self, M: DenseMatrix) -> Fraction:
        return sum((s * D.evaluate(M) for s, D in expand_decorated(self)), Fraction(0))


def expand_decorated(D: DecoratedCmDiagram) -> list[tuple[int, CmDiagram]]:
    out = []
    for k in range(len(D.gray_blocks) + 1):
        for S in combinations(D.gray_blocks, k):
            out.append(((-1) ** k, D.specialize(S)))
    return out


def _minus(X: Iterable[int]) -> list[int]:
    return [x - 1 for x in X]


def eliminated_entry(M: LoopMatrix, corner: CornerLocation, I: int, J: int) -> Fraction:
    """Entry of the matrix after the periodic row operation at ``corner``."""
    v = unfold_entry(M, I, J)
    if (I - corner.i_star) % M.n == 0:
        v -= corner.c * unfold_entry(M, I - 1, J)
    return v


def eliminated_window(M: LoopMatrix, corner: CornerLocation, I: Sequence[int],
                      J: Sequence[int]) -> DenseMatrix:
    return DenseMatrix.of([[eliminated_entry(M, corner, r, c) for c in J] for r in I])


@dataclass
class DeltaMachinery:
    I: list[int]
    J: list[int]
    A: list[int]
    C: list[int]
    rows: list[int]  # row indices of the tilde matrix
    cols: list[int]  # column indices, duplicates allowed
    col_is_c: list[bool]  # which column positions come from C
    tilde: DenseMatrix
    diagram: DecoratedCmDiagram
    extra: dict = field(default_factory=dict)


def build_delta_machinery(M: LoopMatrix, corner: CornerLocation, I: Iterable[int],
                          J: Iterable[int]) -> DeltaMachinery:
    I, J = sorted(set(I)), sorted(J)
    if len(I) != len(J):
        raise ValueError("row and column sets differ in size")
    if corner.b0 == 0:
        raise ValueError("corner is not special: the entry above it is zero")
    n, m = M.n, M.m
    Iset = set(I)
    A = [r for r in I if (r - corner.i_star) % n == 0 and r - 1 not in Iset]
    C = [corner.j_star + (r - corner.i_star) // n * m for r in A]
    rows = sorted(I + _minus(A))
    # C copies sit before J copies among equal column indices
    tagged = sorted([(c, 0) for c in C] + [(j, 1) for j in J])
    cols = [c for c, _ in tagged]
    col_is_c = [tag == 0 for _, tag in tagged]
    tilde = window(M, rows, cols)

    left = []
    for k, (c, tag) in enumerate(tagged):
        in_j, in_c = c in J, c in C
        if in_c and not in_j:
            left.append(BLACK)
        elif in_j and not in_c:
            left.append(WHITE)
        elif k > 0 and tagged[k - 1][0] == c:
            left.append(WHITE)
        else:
            left.append(BLACK)
    Aset, Am = set(A), set(_minus(A))
    right, blocks = [], []
    for k, r in enumerate(rows, 1):
        if r in Am:
            blocks.append(k)
            right.append(GRAY)
        elif r in Aset:
            right.append(GRAY)
        else:
            right.append(BLACK)
    diagram = DecoratedCmDiagram(tuple(left), tuple(right), tuple(blocks))
    return DeltaMachinery(I, J, A, C, rows, cols, col_is_c, tilde, diagram)


def delta_s(M: LoopMatrix, I: Iterable[int], J: Iterable[int], S: Iterable[int],
            A: Iterable[int] | None = None) -> DenseMatrix:
    """Rows of S are swapped for the row directly above them."""
    I, S = sorted(set(I)), set(S)
    if A is not None and not S <= set(A):
        raise ValueError("S must be a subset of A")
    if not S <= set(I):
        raise ValueError("S must be a subset of the row set")
    rows = sorted((set(I) - S) | set(_minus(S)))
    return window(M, rows, sorted(J))


def verify_dcmd_det(M: LoopMatrix, corner: CornerLocation, I: Iterable[int],
                    J: Iterable[int]) -> bool:
    """Check the determinant of an eliminated submatrix against its decorated
    diagram expansion, together with the two intermediate identities."""
    return all(check_dcmd_det(M, corner, I, J).values())


def check_dcmd_det(M: LoopMatrix, corner: CornerLocation, I: Iterable[int],
                   J: Iterable[int]) -> dict[str, bool]:
    dm = build_delta_machinery(M, corner, I, J)
    a0, b0, c = corner.a0, corner.b0, corner.c
    det_delta = determinant(eliminated_window(M, corner, dm.I, dm.J))

    expansion = Fraction(0)
    diagonal_ok = True
    pos = {r: k for k, r in enumerate(dm.rows, 1)}
    cpos = [k for k, flag in enumerate(dm.col_is_c, 1) if flag]
    for k in range(len(dm.A) + 1):
        for S in combinations(dm.A, k):
            expansion += (-c) ** k * determinant(delta_s(M, dm.I, dm.J, S, dm.A))
            rset = sorted(list(S) + _minus(set(dm.A) - set(S)))
            corner_minor = determinant(dm.tilde.sub([pos[r] - 1 for r in rset],
                                                    [p - 1 for p in cpos]))
            expected = b0 ** len(dm.A) * c ** k
            diagonal_ok &= corner_minor == expected == a0 ** k * b0 ** (len(dm.A) - k)
            # the specialized diagram is the complementary minor with these rows and C
            spec = dm.diagram.specialize([pos[r] - 1 for r in S])
            diagonal_ok &= (spec.row_set() == [pos[r] for r in rset]
                            and spec.col_set() == cpos)
    decorated = dm.diagram.evaluate(dm.tilde)
    return {
        "multilinear_expansion": expansion == det_delta,
        "diagonal": diagonal_ok,
        "decorated_diagram": det_delta == decorated / b0 ** len(dm.A),
    }
