"""Sturm sequences, root isolation and refinement on rational intervals."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..polycore import MultiPoly
from ..polycore.rational import decimal_str, rational_str, to_rational
from . import univariate as U


class EndpointRootError(ValueError):
    """An interval endpoint is a root; the caller has to move it."""

    def __init__(self, point):
        super().__init__(f"polynomial vanishes at endpoint {point}")
        self.point = point


def _coeffs(p) -> tuple[list[int], str]:
    if isinstance(p, MultiPoly):
        return U.from_multipoly(p)
    if isinstance(p, SturmChain):
        return p.base, p.var
    return U.from_rationals(p), "x"


class SturmChain:
    """Sturm sequence of the squarefree part of ``p``.

    ``polys[0]`` is the squarefree part, ``polys[1]`` its derivative, and each
    later entry is the negated remainder of its two predecessors, rescaled by
    a positive rational only.
    """

    def __init__(self, p, var: str | None = None):
        coeffs, v = _coeffs(p)
        if not coeffs:
            raise ValueError("Sturm chain of the zero polynomial")
        self.var = var or v
        self.original = coeffs
        self.base = U.squarefree(coeffs)
        chain = [self.base, U.derivative(self.base)]
        while chain[-1]:
            r = U.rem_positive(chain[-2], chain[-1])
            if not r:
                break
            chain.append([-x for x in r])
        if not chain[-1]:
            chain.pop()
        self.chain = chain

    @property
    def polys(self) -> list[MultiPoly]:
        return [U.to_multipoly(c, self.var) for c in self.chain]

    def __len__(self):
        return len(self.chain)

    def variations(self, x: Fraction) -> int:
        signs = [s for s in (U.eval_sign(c, x) for c in self.chain) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def variations_at_infinity(self, positive: bool) -> int:
        signs = [s for s in (U.sign_at_infinity(c, positive) for c in self.chain) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def sign(self, x) -> int:
        return U.eval_sign(self.base, to_rational(x))

    def count(self, a, b) -> int:
        """Distinct real roots in (a, b]; endpoints must not be roots."""
        a, b = to_rational(a), to_rational(b)
        if not a < b:
            raise ValueError(f"empty interval ({a}, {b}]")
        for x in (a, b):
            if U.eval_sign(self.base, x) == 0:
                raise EndpointRootError(x)
        return self.variations(a) - self.variations(b)

    def count_all(self) -> int:
        return self.variations_at_infinity(False) - self.variations_at_infinity(True)


def sturm_chain(p, var: str | None = None) -> SturmChain:
    return SturmChain(p, var)


def sturm_count(p, a, b) -> int:
    chain = p if isinstance(p, SturmChain) else SturmChain(p)
    return chain.count(a, b)


@dataclass
class IsolatingInterval:
    low: Fraction
    high: Fraction
    poly: list  # squarefree integer coefficients, ascending
    var: str = "x"
    multiplicity: int = 1
    exact: Fraction | None = None  # set when the root was hit exactly

    def __post_init__(self):
        self.low, self.high = to_rational(self.low), to_rational(self.high)
        if not self.low < self.high:
            raise ValueError("isolating interval needs low < high")

    @property
    def width(self) -> Fraction:
        return self.high - self.low

    @property
    def midpoint(self) -> Fraction:
        return (self.low + self.high) / 2

    def contains(self, x) -> bool:
        return self.low < to_rational(x) <= self.high

    def is_valid(self) -> bool:
        sl, sh = U.eval_sign(self.poly, self.low), U.eval_sign(self.poly, self.high)
        if sl == 0 or sh == 0:
            return False
        return SturmChain(self.poly).count(self.low, self.high) == 1

    def to_json_dict(self, digits: int = 30) -> dict:
        d = {
            "var": self.var,
            "low": rational_str(self.low),
            "high": rational_str(self.high),
            "width": decimal_str(self.width, 6),
            "approx": decimal_str(self.midpoint, digits),
            "multiplicity": self.multiplicity,
        }
        if self.exact is not None:
            d["exact"] = rational_str(self.exact)
        return d

    def __repr__(self) -> str:
        return f"IsolatingInterval({self.var} in ({self.low}, {self.high}], ~{decimal_str(self.midpoint, 12)})"


def _split_point(chain: SturmChain, a: Fraction, b: Fraction) -> Fraction:
    """A point strictly inside (a, b) that is not a root, near the middle."""
    m = (a + b) / 2
    if chain.sign(m) != 0:
        return m
    k = 3
    while True:
        for j in range(1, k):
            cand = a + (b - a) * Fraction(j, k)
            if chain.sign(cand) != 0:
                return cand
        k += 2


def isolate_roots(p, low=None, high=None, max_depth: int = 10000) -> list[IsolatingInterval]:
    """Disjoint isolating intervals for every distinct root in (low, high].

    Without bounds the Cauchy bound is used, which captures all real roots.
    """
    chain = p if isinstance(p, SturmChain) else SturmChain(p)
    if len(chain.base) <= 1:
        return []
    if low is None or high is None:
        B = U.cauchy_bound(chain.base)
        low = -B if low is None else low
        high = B if high is None else high
    low, high = to_rational(low), to_rational(high)
    total = chain.count(low, high)
    out: list[IsolatingInterval] = []
    stack = [(low, high, total)]
    depth = 0
    while stack:
        a, b, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            out.append(IsolatingInterval(a, b, chain.base, chain.var))
            continue
        depth += 1
        if depth > max_depth:
            raise RuntimeError("root isolation did not terminate")
        m = _split_point(chain, a, b)
        left = chain.count(a, m)
        stack.append((m, b, k - left))
        stack.append((a, m, left))
    out.sort(key=lambda iv: iv.low)
    _attach_multiplicities(chain, out)
    return out


def _attach_multiplicities(chain: SturmChain, intervals: list[IsolatingInterval]) -> None:
    if chain.original == chain.base or len(chain.original) == len(chain.base):
        return
    for factor, mult in U.squarefree_decomposition(chain.original):
        if mult == 1:
            continue
        fc = SturmChain(factor)
        for iv in intervals:
            if fc.sign(iv.low) and fc.sign(iv.high) and fc.count(iv.low, iv.high) == 1:
                iv.multiplicity = mult


def refine(iv: IsolatingInterval, width) -> IsolatingInterval:
    """Bisect until high - low <= width; the sign change is kept throughout."""
    width = to_rational(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if iv.width <= width:
        return iv
    p = iv.poly
    a, b = iv.low, iv.high
    sa = U.eval_sign(p, a)
    sb = U.eval_sign(p, b)
    if sa == 0 or sb == 0 or sa == sb:
        raise ValueError("interval has no sign change; not a squarefree isolating interval")
    while b - a > width:
        m = (a + b) / 2
        sm = U.eval_sign(p, m)
        if sm == 0:
            # rational root hit exactly: report a tiny box around it
            d = width / 4
            lo, hi = max(a, m - d), min(b, m + d)
            if lo == a or hi == b:
                lo, hi = (a + m) / 2, (m + b) / 2
            return IsolatingInterval(lo, hi, p, iv.var, iv.multiplicity, exact=m)
        if sm == sa:
            a = m
        else:
            b = m
    return IsolatingInterval(a, b, p, iv.var, iv.multiplicity)


def positivity_certificate(p, up_to_sign: bool = False) -> bool:
    """Coefficient sign test: even degrees > 0 and odd degrees < 0.

    When it holds, p(-t) has only positive coefficients for t >= 0, so p has
    no root <= 0. ``up_to_sign`` also accepts -p.
    """
    coeffs, _ = _coeffs(p)
    if not coeffs:
        return False

    def check(c):
        return all((x > 0) if i % 2 == 0 else (x < 0) for i, x in enumerate(c))

    return check(coeffs) or (up_to_sign and check([-x for x in coeffs]))


def cauchy_bound(p) -> Fraction:
    coeffs, _ = _coeffs(p)
    return U.cauchy_bound(coeffs)


def squarefree_part(p) -> MultiPoly:
    coeffs, var = _coeffs(p)
    return U.to_multipoly(U.squarefree(coeffs), var)


def root_report(p, intervals: Sequence[IsolatingInterval], width=None, label: str = "") -> dict:
    coeffs, var = _coeffs(p)
    chain = SturmChain(coeffs, var)
    return {
        "poly": label or str(U.to_multipoly(coeffs, var)),
        "degree": len(coeffs) - 1,
        "roots": [iv.to_json_dict() for iv in intervals],
        "sturm_counts": [chain.count(iv.low, iv.high) for iv in intervals],
        "refinement_width": rational_str(width) if width is not None else None,
    }
