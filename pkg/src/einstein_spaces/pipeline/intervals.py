"""Rational interval arithmetic and the Krawczyk uniqueness test.

Endpoints are Fractions. Results can be rounded outward to a dyadic grid so
that endpoint sizes stay bounded; rounding only ever enlarges an interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from ..polycore import MultiPoly, decimal_str, rational_str, to_rational

ROUND_BITS = 160


def _floor_dyadic(x: Fraction, bits: int) -> Fraction:
    s = 1 << bits
    return Fraction(math.floor(x * s), s)


def _ceil_dyadic(x: Fraction, bits: int) -> Fraction:
    s = 1 << bits
    return Fraction(math.ceil(x * s), s)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = to_rational(x)
        return cls(x, x)

    @classmethod
    def around(cls, c, r) -> "Interval":
        c, r = to_rational(c), to_rational(r)
        return cls(c - r, c + r)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def mag(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def contains(self, x) -> bool:
        x = to_rational(x)
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def interior_contains(self, other: "Interval") -> bool:
        return self.lo < other.lo and other.hi < self.hi

    def subset(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def rounded(self, bits: int = ROUND_BITS) -> "Interval":
        return Interval(_floor_dyadic(self.lo, bits), _ceil_dyadic(self.hi, bits))

    def inflate(self, r) -> "Interval":
        r = to_rational(r)
        return Interval(self.lo - r, self.hi + r)

    def _o(self, other) -> "Interval":
        return other if isinstance(other, Interval) else Interval.point(other)

    def __add__(self, other):
        o = self._o(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._o(other)
        return Interval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return self._o(other) - self

    def __mul__(self, other):
        o = self._o(other)
        if o.lo == o.hi:
            c = o.lo
            return Interval(self.lo * c, self.hi * c) if c >= 0 else Interval(self.hi * c, self.lo * c)
        p = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(p), max(p))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._o(other)
        if o.contains_zero():
            raise ZeroDivisionError("interval divisor contains 0")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def __pow__(self, k: int):
        if k == 0:
            return Interval.point(1)
        if k % 2 == 1 or self.lo >= 0:
            a, b = self.lo ** k, self.hi ** k
            return Interval(min(a, b), max(a, b))
        if self.hi <= 0:
            return Interval(self.hi ** k, self.lo ** k)
        return Interval(Fraction(0), max(self.lo ** k, self.hi ** k))

    def to_json_dict(self, digits: int = 30) -> dict:
        return {"low": decimal_str(self.lo, digits), "high": decimal_str(self.hi, digits),
                "width": decimal_str(self.width, 3) if self.width else "0"}

    def exact_str(self) -> str:
        return f"[{rational_str(self.lo)}, {rational_str(self.hi)}]"


Box = Mapping[str, Interval]


def eval_interval(p: MultiPoly, box: Box, n0=None, bits: int | None = ROUND_BITS) -> Interval:
    """Enclosure of p over the box (term-wise, exact rational endpoints)."""
    if n0 is not None and p.is_parametric:
        p = p.specialize(n0)
    acc = Interval.point(0)
    powers: dict = {}
    for e, c in p.terms.items():
        t = Interval.point(c)
        for v, k in zip(p.variables, e):
            if k:
                key = (v, k)
                if key not in powers:
                    powers[key] = box[v] ** k
                    if bits is not None:
                        powers[key] = powers[key].rounded(bits)
                t = t * powers[key]
        acc = acc + t
        if bits is not None:
            acc = acc.rounded(bits)
    return acc


def _inverse(M: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(M)
    A = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(A[r][col]))
        if not A[piv][col]:
            raise ZeroDivisionError("singular Jacobian at the midpoint")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]


def jacobian(F: Sequence[MultiPoly], variables: Sequence[str]) -> list[list[MultiPoly]]:
    return [[f.derivative(v) for v in variables] for f in F]


@dataclass
class KrawczykResult:
    ok: bool
    box: dict
    contracted: dict | None
    reason: str = ""


def krawczyk(F: Sequence[MultiPoly], variables: Sequence[str], box: Box,
             J: list[list[MultiPoly]] | None = None, bits: int = ROUND_BITS) -> KrawczykResult:
    """K(X) = y - Y F(y) + (I - Y F'(X))(X - y) with y the midpoint.

    If K(X) lies in the interior of X, F has exactly one zero in X, and it
    lies in K(X) (returned as ``contracted``, intersected with X).
    """
    variables = list(variables)
    if len(F) != len(variables):
        return KrawczykResult(False, dict(box), None, "system is not square")
    J = J or jacobian(F, variables)
    y = {v: box[v].mid for v in variables}
    # a short dyadic midpoint keeps the arithmetic small
    y = {v: _floor_dyadic(c, bits) if box[v].width else c for v, c in y.items()}
    Fy = [f.evaluate(y) for f in F]
    Jy = [[d.evaluate(y) for d in row] for row in J]
    try:
        Y = _inverse(Jy)
    except ZeroDivisionError as exc:
        return KrawczykResult(False, dict(box), None, str(exc))
    Y = [[_floor_dyadic(x, bits) for x in row] for row in Y]
    JX = [[eval_interval(d, box, bits=bits) for d in row] for row in J]
    n = len(variables)
    dX = [box[v] - y[v] for v in variables]
    K = {}
    for i, v in enumerate(variables):
        acc = Interval.point(y[v] - sum(Y[i][j] * Fy[j] for j in range(n)))
        for j in range(n):
            m = Interval.point(1 if i == j else 0)
            for k in range(n):
                if Y[i][k]:
                    m = m - JX[k][j] * Y[i][k]
            acc = acc + (m * dX[j]).rounded(bits)
        K[v] = acc.rounded(bits)
    inside = all(box[v].interior_contains(K[v]) for v in variables)
    if not inside:
        return KrawczykResult(False, dict(box), None, "K(X) not inside X")
    return KrawczykResult(True, dict(box), {v: K[v].intersect(box[v]) for v in variables})
