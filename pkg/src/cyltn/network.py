"""Cylindrical networks and their weight matrices.

The embedding is recorded only through per-edge crossing counts with the
reference line ``h``: an edge's ``hcross`` is the signed number of times it
crosses ``h``, counterclockwise positive.  A path's rotor is the sum of its
edges' ``hcross``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from .core import (ONE, ZERO, LaurentPoly, LoopMatrix, determinant, rational_str, split_index,
                   to_rational, window)

MAX_PATHS = 100_000
ONE_Q = Fraction(1)


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    weight: Fraction
    hcross: int = 0


@dataclass(frozen=True)
class NetPath:
    edges: tuple[int, ...]
    vertices: tuple[int, ...]
    weight: Fraction
    rotor: int


class CylNetwork:
    """Acyclic edge-weighted digraph with ordered sources and sinks."""

    def __init__(self, vertex_count: int, edges: Iterable, sources: Sequence[int],
                 sinks: Sequence[int]):
        es = []
        for e in edges:
            if not isinstance(e, Edge):
                e = Edge(*e)
            es.append(Edge(int(e.tail), int(e.head), to_rational(e.weight), int(e.hcross)))
        self.vertex_count = vertex_count
        self.edges: tuple[Edge, ...] = tuple(es)
        self.sources = tuple(sources)
        self.sinks = tuple(sinks)
        for v in (*self.sources, *self.sinks):
            if not 0 <= v < vertex_count:
                raise ValueError(f"vertex {v} out of range")
        if len(set(self.sources)) != len(self.sources) or len(set(self.sinks)) != len(self.sinks):
            raise ValueError("repeated source or sink")
        if set(self.sources) & set(self.sinks):
            raise ValueError("sources and sinks must be disjoint")
        self.out: list[list[int]] = [[] for _ in range(vertex_count)]
        ts = TopologicalSorter({v: () for v in range(vertex_count)})
        for k, e in enumerate(self.edges):
            if not (0 <= e.tail < vertex_count and 0 <= e.head < vertex_count):
                raise ValueError(f"edge {k} has an endpoint out of range")
            self.out[e.tail].append(k)
            ts.add(e.head, e.tail)
        try:
            self.order = tuple(ts.static_order())
        except CycleError as exc:
            raise ValueError("network has a directed cycle") from exc

    @property
    def n(self) -> int:
        return len(self.sources)

    @property
    def m(self) -> int:
        return len(self.sinks)

    def __repr__(self) -> str:
        return (f"CylNetwork(vertices={self.vertex_count}, edges={len(self.edges)}, "
                f"sources={list(self.sources)}, sinks={list(self.sinks)})")

    def min_weight(self) -> Fraction | None:
        return min((e.weight for e in self.edges), default=None)

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "sources": list(self.sources),
                "sinks": list(self.sinks),
                "edges": [{"tail": e.tail, "head": e.head, "weight": rational_str(e.weight),
                           "hcross": e.hcross} for e in self.edges]}

    @classmethod
    def from_json(cls, obj: Mapping) -> CylNetwork:
        edges = [Edge(e["tail"], e["head"], Fraction(e["weight"]), e.get("hcross", 0))
                 for e in obj["edges"]]
        return cls(obj["vertices"], edges, obj["sources"], obj["sinks"])


def _paths_between(N: CylNetwork, s: int, t: int) -> list[NetPath]:
    found: list[NetPath] = []
    stack_e: list[int] = []
    stack_v = [s]

    def dfs(v: int, w: Fraction, rot: int):
        if v == t:
            found.append(NetPath(tuple(stack_e), tuple(stack_v), w, rot))
            if len(found) > MAX_PATHS:
                raise RuntimeError("path enumeration exceeded the desk-scale cap")
            return
        for k in N.out[v]:
            e = N.edges[k]
            stack_e.append(k)
            stack_v.append(e.head)
            dfs(e.head, w * e.weight, rot + e.hcross)
            stack_e.pop()
            stack_v.pop()

    dfs(s, Fraction(1), 0)
    return found


def enumerate_paths(N: CylNetwork, i: int, j: int) -> list[NetPath]:
    """All paths from source ``i`` to sink ``j`` (1-based), lexicographic by edge index."""
    if not (1 <= i <= N.n and 1 <= j <= N.m):
        raise IndexError("source or sink index out of range")
    return _paths_between(N, N.sources[i - 1], N.sinks[j - 1])


def folded_weight_matrix_by_paths(N: CylNetwork) -> LoopMatrix:
    grid = [[LaurentPoly() for _ in range(N.m)] for _ in range(N.n)]
    for i in range(1, N.n + 1):
        for j in range(1, N.m + 1):
            acc: dict[int, Fraction] = {}
            for p in enumerate_paths(N, i, j):
                acc[p.rotor] = acc.get(p.rotor, 0) + p.weight
            grid[i - 1][j - 1] = LaurentPoly(acc)
    return LoopMatrix(N.n, N.m, grid)


def folded_weight_matrix(N: CylNetwork) -> LoopMatrix:
    """Folded weight matrix, computed by dynamic programming over a topological order.

    Agrees with summing ``t**rot(p) * wt(p)`` over enumerated paths, without
    the exponential blowup.
    """
    if N.n == 0 or N.m == 0:
        raise ValueError("a network needs at least one source and one sink")
    grid = []
    for s in N.sources:
        acc = {s: ONE}
        for v in N.order:
            val = acc.get(v)
            if val is None or val.is_zero():
                continue
            for k in N.out[v]:
                e = N.edges[k]
                if e.weight == 0:
                    continue
                contrib = val.shift(e.hcross) * e.weight
                acc[e.head] = acc[e.head] + contrib if e.head in acc else contrib
        grid.append([acc.get(w, ZERO) for w in N.sinks])
    return LoopMatrix(N.n, N.m, grid)


def _path_classes(N: CylNetwork, I: int, J: int) -> list[tuple[NetPath, dict[int, int]]]:
    """(I, J)-paths with their prefix rotor at each visited vertex."""
    i, r = split_index(I, N.n)
    j, s = split_index(J, N.m)
    out = []
    for p in enumerate_paths(N, i, j):
        if p.rotor != s - r:
            continue
        pref = {p.vertices[0]: 0}
        acc = 0
        for k, v in zip(p.edges, p.vertices[1:]):
            acc += N.edges[k].hcross
            pref[v] = acc
        out.append((p, pref))
    return out


def properly_crossing(p, pp, q, qp, target_rot: int) -> bool:
    """True when a tail swap at some common vertex turns ``p`` into an (i, j')-path.

    ``target_rot`` is the rotor an (i, j')-path must have.
    """
    for c in pp.keys() & qp.keys():
        if pp[c] + (q.rotor - qp[c]) == target_rot:
            return True
    return False


def glv_minor(N: CylNetwork, I: Sequence[int], J: Sequence[int]) -> Fraction:
    """Sum over families of pairwise uncrossed paths (brute force oracle)."""
    if len(I) != len(J):
        raise ValueError("row and column sets differ in size")
    if list(I) != sorted(set(I)) or list(J) != sorted(set(J)):
        raise ValueError("index sets must be strictly increasing")
    k = len(I)
    if k == 0:
        return Fraction(1)
    classes = [_path_classes(N, a, b) for a, b in zip(I, J)]
    if any(not c for c in classes):
        return Fraction(0)
    rblock = [split_index(a, N.n)[1] for a in I]
    sblock = [split_index(b, N.m)[1] for b in J]
    # crossed[a][b] holds pairs of path positions that properly cross
    ok = {}
    for a in range(k):
        for b in range(a + 1, k):
            bad = set()
            for x, (p, pp) in enumerate(classes[a]):
                for y, (q, qp) in enumerate(classes[b]):
                    if properly_crossing(p, pp, q, qp, sblock[b] - rblock[a]):
                        bad.add((x, y))
            ok[a, b] = bad
    total = Fraction(0)
    for choice in product(*(range(len(c)) for c in classes)):
        if any((choice[a], choice[b]) in ok[a, b] for a in range(k) for b in range(a + 1, k)):
            continue
        w = Fraction(1)
        for a, x in enumerate(choice):
            w *= classes[a][x][0].weight
        total += w
    return total


def concatenate(N1: CylNetwork, N2: CylNetwork) -> CylNetwork:
    """Glue the sinks of ``N1`` to the sources of ``N2`` in order."""
    if N1.m != N2.n:
        raise ValueError(f"cannot glue {N1.m} sinks to {N2.n} sources")
    if any(N1.out[w] for w in N1.sinks):
        raise ValueError("left network has a sink with outgoing edges")
    if any(e.head in set(N2.sources) for e in N2.edges):
        raise ValueError("right network has a source with incoming edges")
    glue = dict(zip(N2.sources, N1.sinks))
    relabel = {}
    nxt = N1.vertex_count
    for v in range(N2.vertex_count):
        if v in glue:
            relabel[v] = glue[v]
        else:
            relabel[v] = nxt
            nxt += 1
    edges = list(N1.edges) + [Edge(relabel[e.tail], relabel[e.head], e.weight, e.hcross)
                              for e in N2.edges]
    return CylNetwork(nxt, edges, N1.sources, [relabel[w] for w in N2.sinks])


def concatenate_all(nets: Sequence[CylNetwork]) -> CylNetwork:
    out = nets[0]
    for N in nets[1:]:
        out = concatenate(out, N)
    return out


def transpose_network(N: CylNetwork) -> CylNetwork:
    """Reverse every edge and swap sources with sinks; the weight matrix transposes."""
    edges = [Edge(e.head, e.tail, e.weight, -e.hcross) for e in N.edges]
    return CylNetwork(N.vertex_count, edges, N.sinks, N.sources)


def _two_columns(n: int, m: int) -> tuple[list[int], list[int]]:
    return list(range(n)), list(range(n, n + m))


def identity_network(n: int) -> CylNetwork:
    src, snk = _two_columns(n, n)
    return CylNetwork(2 * n, [Edge(a, b, ONE_Q) for a, b in zip(src, snk)], src, snk)


def _check_nonneg(*vals):
    for v in vals:
        if to_rational(v) < 0:
            raise ValueError(f"negative weight {v}")


def elementary_row_network(n: int, k: int, c) -> CylNetwork:
    """Identity plus ``c`` at folded position (k, k-1); for k = 1 the extra edge
    wraps to sink n and crosses h once clockwise, giving ``c/t`` at (1, n)."""
    _check_nonneg(c)
    if not 1 <= k <= n:
        raise ValueError("residue out of range")
    src, snk = _two_columns(n, n)
    edges = [Edge(a, b, ONE_Q) for a, b in zip(src, snk)]
    if k >= 2:
        edges.append(Edge(src[k - 1], snk[k - 2], to_rational(c)))
    else:
        edges.append(Edge(src[0], snk[n - 1], to_rational(c), -1))
    return CylNetwork(2 * n, edges, src, snk)


def elementary_up_network(n: int, k: int, c) -> CylNetwork:
    """Identity plus ``c`` at folded position (k, k+1); for k = n the extra edge
    wraps to sink 1 with one counterclockwise crossing, giving ``c*t`` at (n, 1)."""
    _check_nonneg(c)
    if not 1 <= k <= n:
        raise ValueError("residue out of range")
    src, snk = _two_columns(n, n)
    edges = [Edge(a, b, ONE_Q) for a, b in zip(src, snk)]
    if k < n:
        edges.append(Edge(src[k - 1], snk[k], to_rational(c)))
    else:
        edges.append(Edge(src[n - 1], snk[0], to_rational(c), 1))
    return CylNetwork(2 * n, edges, src, snk)


def row_deletion_network(n: int, k: int) -> CylNetwork:
    """n-1 sources, n sinks; sink k is isolated and the others are hit in order."""
    if not 1 <= k <= n or n < 2:
        raise ValueError("need n >= 2 and 1 <= k <= n")
    src, snk = _two_columns(n - 1, n)
    targets = [w for idx, w in enumerate(snk, 1) if idx != k]
    return CylNetwork(2 * n - 1, [Edge(a, b, ONE_Q) for a, b in zip(src, targets)], src, snk)


def diagonal_base_network(weights: Sequence, shift: int = 0,
                          upper: Sequence | None = None) -> CylNetwork:
    """Network whose unfolded weight matrix lives on the diagonal J = I + shift.

    Source i feeds sink ``i + shift`` (reduced mod n) with the given weight;
    each edge winds around the cylinder as often as the shift requires.  With
    ``upper``, source i also feeds sink ``i + shift + 1``, filling the next
    diagonal as well (a bidiagonal band).
    """
    ws = [to_rational(w) for w in weights]
    us = [to_rational(u) for u in upper] if upper is not None else []
    _check_nonneg(*ws, *us)
    n = len(ws)
    if n == 0:
        raise ValueError("need at least one weight")
    if upper is not None and len(us) != n:
        raise ValueError("upper diagonal has the wrong length")
    src, snk = _two_columns(n, n)
    edges = []
    for i, w in enumerate(ws, 1):
        j, blk = split_index(i + shift, n)
        edges.append(Edge(src[i - 1], snk[j - 1], w, blk))
        if us:
            j, blk = split_index(i + shift + 1, n)
            edges.append(Edge(src[i - 1], snk[j - 1], us[i - 1], blk))
    return CylNetwork(2 * n, edges, src, snk)


def empty_network(n: int, m: int) -> CylNetwork:
    """No edges: the zero n x m weight matrix."""
    src, snk = _two_columns(n, m)
    return CylNetwork(n + m, [], src, snk)


def glv_check(N: CylNetwork, max_order: int = 3, periods: int = 2
              ) -> tuple[int, list[tuple[tuple[int, ...], tuple[int, ...], Fraction, Fraction]]]:
    """Compare path-family sums with determinants for every minor of order
    ``<= max_order`` in the first ``periods`` blocks of rows and columns.

    Returns the number of minors checked and the mismatches as
    ``(rows, cols, path_sum, determinant)``.
    """
    W = folded_weight_matrix(N)
    rows = range(1, periods * N.n + 1)
    cols = range(1, periods * N.m + 1)
    checked, bad = 0, []
    for k in range(1, max_order + 1):
        for I in combinations(rows, k):
            for J in combinations(cols, k):
                d = determinant(window(W, I, J))
                g = glv_minor(N, I, J)
                checked += 1
                if d != g:
                    bad.append((I, J, g, d))
    return checked, bad
