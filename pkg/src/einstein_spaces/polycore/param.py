"""Univariate polynomials in the parameter ``n`` and the fraction field Q(n)."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .rational import RationalLike, to_rational


class PoleError(ZeroDivisionError):
    """A parametric denominator vanishes at the requested parameter value."""


def _strip(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


class ParamPoly:
    """Dense polynomial in ``n`` with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        self.coeffs = _strip([to_rational(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs: tuple[Fraction, ...]) -> "ParamPoly":
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        return obj

    @classmethod
    def gen(cls) -> "ParamPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: RationalLike) -> "ParamPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ParamPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash(self.coeffs)

    def _coerce(self, other) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            return other
        return ParamPoly((other,))

    def __add__(self, other):
        if isinstance(other, ParamCoefficient):
            return NotImplemented
        b = self._coerce(other).coeffs
        a = self.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ParamPoly._raw(_strip(out))

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, ParamCoefficient):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, ParamCoefficient):
            return NotImplemented
        b = self._coerce(other).coeffs
        a = self.coeffs
        if not a or not b:
            return ParamPoly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return ParamPoly._raw(_strip(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ParamPoly":
        result = ParamPoly((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "ParamPoly") -> tuple["ParamPoly", "ParamPoly"]:
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        db, lcb = other.degree, other.lc
        if len(rem) - 1 < db:
            return ParamPoly._raw(()), self
        quot = [Fraction(0)] * (len(rem) - db)
        for i in range(len(rem) - 1 - db, -1, -1):
            c = rem[i + db] / lcb
            quot[i] = c
            if c:
                for j, bc in enumerate(other.coeffs):
                    rem[i + j] -= c * bc
        return ParamPoly._raw(_strip(quot)), ParamPoly._raw(_strip(rem[:db]))

    def __floordiv__(self, other: "ParamPoly") -> "ParamPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "ParamPoly") -> "ParamPoly":
        return self.divmod(other)[1]

    def monic(self) -> "ParamPoly":
        if not self.coeffs:
            return self
        lc = self.lc
        return ParamPoly._raw(tuple(c / lc for c in self.coeffs))

    def gcd(self, other: "ParamPoly") -> "ParamPoly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def __call__(self, n0: RationalLike) -> Fraction:
        n0 = to_rational(n0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n0 + c
        return acc

    def shift(self, a: RationalLike) -> "ParamPoly":
        """Return ``p(n + a)``."""
        out = ParamPoly(())
        step = ParamPoly((a, 1))
        for c in reversed(self.coeffs):
            out = out * step + c
        return out

    def integer_content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        from math import gcd, lcm

        if not self.coeffs:
            return Fraction(0)
        den = lcm(*(c.denominator for c in self.coeffs))
        num = gcd(*(int(c * den) for c in self.coeffs))
        return Fraction(num, den)

    def __repr__(self) -> str:
        return f"ParamPoly({self})"

    def __str__(self) -> str:
        return format_univariate(self.coeffs, "n")


def format_univariate(coeffs: Sequence[Fraction], var: str) -> str:
    parts: list[str] = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append(f"{sign} {body}")
    if not parts:
        return "0"
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


class ParamCoefficient:
    """Element of Q(n), kept as num/den with coprime parts and monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, ParamCoefficient) and den is None:
            self.num, self.den = num.num, num.den
            return
        num = num if isinstance(num, ParamPoly) else ParamPoly((num,))
        if den is None:
            den = ParamPoly((1,))
        elif not isinstance(den, ParamPoly):
            den = ParamPoly((den,))
        if not den:
            raise ZeroDivisionError("zero denominator in Q(n)")
        if not num:
            self.num, self.den = num, ParamPoly((1,))
            return
        if den.degree > 0:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            num = ParamPoly._raw(tuple(c / lc for c in num.coeffs))
            den = ParamPoly._raw(tuple(c / lc for c in den.coeffs))
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: ParamPoly, den: ParamPoly) -> "ParamCoefficient":
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def gen(cls) -> "ParamCoefficient":
        return cls(ParamPoly.gen())

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamCoefficient):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, ParamPoly)):
            return self == _as_pc(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num.coeffs, self.den.coeffs))

    def __add__(self, other):
        o = _as_pc(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            if self.den.degree == 0:
                return ParamCoefficient._raw(self.num + o.num, self.den)
            return ParamCoefficient(self.num + o.num, self.den)
        return ParamCoefficient(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "ParamCoefficient":
        return ParamCoefficient._raw(-self.num, self.den)

    def __sub__(self, other):
        o = _as_pc(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _as_pc(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _as_pc(other)
        if o is None:
            return NotImplemented
        if self.den.degree == 0 and o.den.degree == 0:
            return ParamCoefficient._raw(self.num * o.num, self.den)
        return ParamCoefficient(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_pc(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero in Q(n)")
        return ParamCoefficient(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = _as_pc(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int) -> "ParamCoefficient":
        if k < 0:
            return ParamCoefficient(1) / (self ** (-k))
        return ParamCoefficient._raw(self.num ** k, self.den ** k)

    def __call__(self, n0: RationalLike) -> Fraction:
        d = self.den(n0)
        if not d:
            raise PoleError(f"denominator {self.den} vanishes at n = {n0}")
        return self.num(n0) / d

    def __repr__(self) -> str:
        return f"ParamCoefficient({self})"

    def __str__(self) -> str:
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _as_pc(x) -> ParamCoefficient | None:
    if isinstance(x, ParamCoefficient):
        return x
    if isinstance(x, ParamPoly):
        return ParamCoefficient._raw(x, ParamPoly._raw((Fraction(1),)))
    if isinstance(x, (int, Fraction)):
        return ParamCoefficient._raw(ParamPoly((x,)), ParamPoly._raw((Fraction(1),)))
    return None


def specialize_coefficient(c, n0: RationalLike) -> Fraction:
    """Evaluate a Rational or Q(n) coefficient at ``n = n0``."""
    if isinstance(c, ParamCoefficient):
        return c(n0)
    if isinstance(c, ParamPoly):
        return c(n0)
    return to_rational(c)
