"""Random instances: planar cylindrical networks and Loewner-Whitney products.

Networks are drawn on ``L`` horizontal lines wrapped around the cylinder.
Each line is a left-to-right chain of vertices; sources sit at the left end,
sinks at the right end.  Rungs join adjacent lines and always move strictly
rightward, which keeps the graph acyclic.  Rungs in the strip between line
``L`` and line 1 cross the reference line: downward ones count +1, upward
ones -1.  Two rungs in the same strip are never allowed to cross, so the
drawing stays planar.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .core import DenseMatrix
from .network import CylNetwork, Edge


def random_weight(rng: random.Random, zero_prob: float = 0.0) -> Fraction:
    if rng.random() < zero_prob:
        return Fraction(0)
    return Fraction(rng.randint(1, 6), rng.randint(1, 3))


def random_planar_network(rng: random.Random, n: int, m: int, *, max_vertices: int = 8,
                          max_edges: int = 12, extra_lines: int = 1,
                          zero_prob: float = 0.05) -> CylNetwork:
    """A random planar cylindrical network with ``n`` sources and ``m`` sinks."""
    if n + m > max_vertices:
        raise ValueError("too many terminals for the vertex budget")
    L = max(n, m, 2) + rng.randint(0, extra_lines)
    X = 10
    src_lines = sorted(rng.sample(range(L), n))
    snk_lines = sorted(rng.sample(range(L), m))
    lines: list[list[tuple[int, int]]] = [[] for _ in range(L)]  # (x, vertex id)
    nv = 0
    sources, sinks = [], []
    for k in src_lines:
        lines[k].append((0, nv))
        sources.append(nv)
        nv += 1
    for k in snk_lines:
        lines[k].append((X, nv))
        sinks.append(nv)
        nv += 1
    for _ in range(rng.randint(0, max_vertices - nv)):
        k = rng.randrange(L)
        used = {x for x, _ in lines[k]}
        free = [x for x in range(1, X) if x not in used]
        lines[k].append((rng.choice(free), nv))
        nv += 1
    for ln in lines:
        ln.sort()

    edges: list[Edge] = []
    for ln in lines:
        for (_, a), (_, b) in zip(ln, ln[1:]):
            if len(edges) < max_edges:
                edges.append(Edge(a, b, random_weight(rng, zero_prob)))

    # strip k joins line k (top) and line k+1 (bottom); strip L-1 wraps
    strips: dict[int, list[tuple[int, int]]] = {k: [] for k in range(L)}
    attempts = 0
    while len(edges) < max_edges and attempts < 60:
        attempts += 1
        k = rng.randrange(L)
        top, bot = lines[k], lines[(k + 1) % L]
        if not top or not bot or (L == 1):
            continue
        down = rng.random() < 0.5
        tail_line, head_line = (top, bot) if down else (bot, top)
        xt, vt = rng.choice(tail_line)
        cands = [(x, v) for x, v in head_line if x > xt]
        if not cands:
            continue
        xh, vh = rng.choice(cands)
        seg = (xt, xh) if down else (xh, xt)  # (top x, bottom x)
        if any((seg[0] - s0) * (seg[1] - s1) < 0 for s0, s1 in strips[k]):
            continue
        strips[k].append(seg)
        hc = 0
        if k == L - 1:
            hc = 1 if down else -1
        edges.append(Edge(vt, vh, random_weight(rng, zero_prob), hc))
    return CylNetwork(nv, edges, sources, sinks)


def lw_product(rng: random.Random, size: int, factors: int = 10,
               allow_zero_diagonal: bool = False) -> DenseMatrix:
    """Product of random elementary TN generators."""
    from .tncheck import lw_generator

    M = DenseMatrix.of([[int(i == j) for j in range(size)] for i in range(size)])
    for _ in range(factors):
        kind = rng.choice(["upper", "lower", "diagonal"] if size > 1 else ["diagonal"])
        if kind == "diagonal":
            pos = rng.randint(1, size)
            lo = 0 if allow_zero_diagonal else 1
            val = Fraction(rng.randint(lo, 4), rng.randint(1, 3))
        else:
            pos = rng.randint(1, size - 1)
            val = Fraction(rng.randint(0, 4), rng.randint(1, 3))
        M = M @ lw_generator(size, kind, pos, val)
    return M


def random_rational_matrix(rng: random.Random, size: int, low: int = -5,
                           high: int = 5) -> DenseMatrix:
    """Square matrix with small random rational entries of either sign."""
    return DenseMatrix.of([[Fraction(rng.randint(low, high), rng.randint(1, 4))
                            for _ in range(size)] for _ in range(size)])
