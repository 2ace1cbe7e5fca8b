"""Dense univariate polynomials over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .core import LaurentPoly, rational_str, to_rational


class RatPoly:
    """Coefficients from degree 0 upward, trailing zeros stripped.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def from_roots(cls, roots, lead=1) -> "RatPoly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-to_rational(r), 1])
        return p

    @classmethod
    def parse(cls, text: str) -> "RatPoly":
        """Comma separated coefficients, lowest degree first."""
        text = text.strip()
        if not text:
            return cls()
        return cls(Fraction(tok.strip()) for tok in text.split(","))

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RatPoly":
        if p.is_zero():
            return cls()
        if p.min_deg() < 0:
            raise ValueError("Laurent polynomial has negative-degree terms")
        return cls(p.coeff(d) for d in range(p.max_deg() + 1))

    def to_laurent(self) -> LaurentPoly:
        return LaurentPoly({d: c for d, c in enumerate(self.coeffs)})

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, d: int) -> Fraction:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else Fraction(0)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "RatPoly":
        return RatPoly(-c for c in self.coeffs)

    def __add__(self, other: "RatPoly") -> "RatPoly":
        k = max(len(self.coeffs), len(other.coeffs))
        return RatPoly(self[d] + other[d] for d in range(k))

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __mul__(self, other) -> "RatPoly":
        if not isinstance(other, RatPoly):
            c = to_rational(other)
            return RatPoly(c * a for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return RatPoly(), self
        quo = [Fraction(0)] * dq
        lead = other.lead()
        for k in range(dq - 1, -1, -1):
            c = rem[k + other.degree] / lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return RatPoly(quo), RatPoly(rem[:other.degree])

    def __floordiv__(self, other: "RatPoly") -> "RatPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "RatPoly") -> "RatPoly":
        return divmod(self, other)[1]

    def monic(self) -> "RatPoly":
        return self * (1 / self.lead()) if self.coeffs else self

    def derivative(self) -> "RatPoly":
        return RatPoly(d * c for d, c in enumerate(self.coeffs) if d)

    def low_order(self) -> int:
        """Multiplicity of 0 as a root (-1 for the zero polynomial)."""
        for d, c in enumerate(self.coeffs):
            if c:
                return d
        return -1

    def divide_t(self, k: int = 1) -> "RatPoly":
        if any(self.coeffs[:k]):
            raise ValueError("not divisible by t")
        return RatPoly(self.coeffs[k:])

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __repr__(self) -> str:
        return f"RatPoly({self})"

    def __str__(self) -> str:
        return str(self.to_laurent())

    def to_json(self) -> list[str]:
        return [rational_str(c) for c in self.coeffs]


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: RatPoly, b: RatPoly) -> tuple[RatPoly, RatPoly, RatPoly]:
    """``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = RatPoly([1]), RatPoly()
    t0, t1 = RatPoly(), RatPoly([1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lead()
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_part(p: RatPoly) -> RatPoly:
    if p.degree <= 0:
        return RatPoly([1]) if not p.is_zero() else p
    return (p // poly_gcd(p, p.derivative())).monic()


def yun(p: RatPoly) -> list[RatPoly]:
    """Square-free factors ``[f1, f2, ...]`` with ``p = c * f1 * f2**2 * ...``."""
    if p.degree <= 0:
        return []
    out = []
    a = p.monic()
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a // c
    y = b // c
    z = y - w.derivative()
    while w.degree > 0:
        g = poly_gcd(w, z)
        out.append(g)
        w = w // g
        y = z // g
        z = y - w.derivative()
    while out and out[-1].degree == 0:
        out.pop()
    return out
