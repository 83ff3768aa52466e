"""Exact rationals.

``fractions.Fraction`` already keeps numerator and denominator coprime with a
positive denominator, so it is used directly as the rational type.
"""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    # gmpy2.mpq and friends expose numerator/denominator
    num, den = getattr(x, "numerator", None), getattr(x, "denominator", None)
    if num is not None and den is not None and not isinstance(x, float):
        return Fraction(int(num), int(den))
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def rational_str(q: Fraction) -> str:
    q = to_rational(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def decimal_str(q: Fraction, digits: int = 25) -> str:
    """Decimal rendering with ``digits`` significant digits (rounded half-even)."""
    q = to_rational(q)
    with localcontext() as ctx:
        ctx.prec = digits
        return str(+(Decimal(q.numerator) / Decimal(q.denominator)))


def sign(q) -> int:
    return (q > 0) - (q < 0)
