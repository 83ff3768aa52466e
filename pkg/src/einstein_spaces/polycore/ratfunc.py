"""Rational functions over Q in a few symbolic parameters (e.g. d1, d2).

Kept deliberately light: no multivariate gcd, so numerator and denominator
are not reduced. Equality is decided by cross-multiplication, which is exact.
Used where dimensions themselves are symbols.
"""

from __future__ import annotations

from fractions import Fraction

from .multipoly import MultiPoly


class RationalFunction:
    __slots__ = ("num", "den")

    # fixed generic point used only for hashing
    _HASH_POINT = (Fraction(104729, 7919), Fraction(7727, 1013), Fraction(3301, 401))

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None):
        if den is None:
            den = MultiPoly.constant(1, num.variables, num.order)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if num.variables != den.variables:
            raise ValueError("variable mismatch")
        if not num:
            den = MultiPoly.constant(1, num.variables, num.order)
        else:
            lc = den.leading_coefficient
            if lc != 1:
                num, den = num / lc, den / lc
            if num == den:
                num = den = MultiPoly.constant(1, num.variables, num.order)
        self.num, self.den = num, den

    @classmethod
    def symbol(cls, name: str, variables) -> "RationalFunction":
        return cls(MultiPoly.variable(name, variables))

    @property
    def variables(self):
        return self.num.variables

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, MultiPoly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction(MultiPoly.constant(other, self.variables, self.num.order))
        return None

    def __bool__(self) -> bool:
        return bool(self.num)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalFunction(self.den ** (-k), self.num ** (-k))
        return RationalFunction(self.num ** k, self.den ** k)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self) -> int:
        point = dict(zip(self.variables, self._HASH_POINT))
        d = self.den.evaluate(point)
        return hash(self.num.evaluate(point) / d) if d else 0

    def evaluate(self, values) -> Fraction:
        d = self.den.evaluate(values)
        if not d:
            raise ZeroDivisionError("denominator vanishes")
        return self.num.evaluate(values) / d

    def __call__(self, **values) -> Fraction:
        return self.evaluate(values)

    def __repr__(self) -> str:
        return f"RationalFunction(({self.num})/({self.den}))"

    def __str__(self) -> str:
        if self.den.is_constant() and self.den.constant_term() == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"
