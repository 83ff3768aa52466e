"""Sparse multivariate polynomials over Q or Q(n)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .orders import Monomial, MonomialOrder, get_order, mono_mul
from .param import ParamCoefficient, ParamPoly, specialize_coefficient
from .rational import to_rational


class VariableMismatchError(ValueError):
    """Operands live in different variable contexts or orders."""


def coerce_coefficient(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, ParamPoly):
        c = ParamCoefficient(c)
    if isinstance(c, ParamCoefficient):
        return c.constant_value() if c.is_constant() else c
    return c


class MultiPoly:
    """Immutable polynomial with a declared variable sequence and monomial order.

    ``terms`` maps exponent tuples to nonzero coefficients. Iteration through
    :meth:`items` is in strictly descending monomial order.
    """

    __slots__ = ("variables", "order", "_terms", "_sorted")

    def __init__(self, variables: Sequence[str], terms: Mapping[Monomial, object] | None = None,
                 order="lex"):
        self.variables = tuple(variables)
        self.order = get_order(order)
        nv = len(self.variables)
        clean: dict[Monomial, object] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nv:
                raise VariableMismatchError(
                    f"exponent {exp} does not match variables {self.variables}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = coerce_coefficient(c)
            if c:
                clean[exp] = clean[exp] + c if exp in clean else c
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean
        self._sorted = None

    @classmethod
    def _raw(cls, variables, order, terms: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.order = order
        obj._terms = terms
        obj._sorted = None
        return obj

    # -- construction helpers -------------------------------------------------
    @classmethod
    def zero(cls, variables, order="lex") -> "MultiPoly":
        return cls._raw(tuple(variables), get_order(order), {})

    @classmethod
    def constant(cls, c, variables, order="lex") -> "MultiPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c}, order)

    @classmethod
    def variable(cls, name: str, variables, order="lex") -> "MultiPoly":
        variables = tuple(variables)
        if name not in variables:
            raise VariableMismatchError(f"{name!r} not among {variables}")
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls._raw(variables, get_order(order), {exp: Fraction(1)})

    @classmethod
    def from_univariate(cls, coeffs: Sequence, var: str, variables=None, order="lex") -> "MultiPoly":
        """Build from dense coefficients (lowest degree first) in ``var``."""
        variables = tuple(variables) if variables is not None else (var,)
        i = variables.index(var)
        terms = {}
        for k, c in enumerate(coeffs):
            exp = [0] * len(variables)
            exp[i] = k
            terms[tuple(exp)] = c
        return cls(variables, terms, order)

    # -- basic access -----------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> list[tuple[Monomial, object]]:
        if self._sorted is None:
            key = self.order.key
            self._sorted = sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)
        return self._sorted

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, exp: Monomial):
        return self._terms.get(tuple(exp), Fraction(0))

    @property
    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        if self._sorted is not None:
            return self._sorted[0][0]
        return max(self._terms, key=self.order.key)

    @property
    def leading_coefficient(self):
        return self._terms[self.leading_monomial]

    @property
    def is_parametric(self) -> bool:
        return any(isinstance(c, ParamCoefficient) for c in self._terms.values())

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self):
        return self._terms.get((0,) * len(self.variables), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def degree(self, var: str | None = None) -> int:
        if var is None:
            return self.total_degree()
        i = self._index(var)
        return max((e[i] for e in self._terms), default=-1)

    def support(self) -> tuple[str, ...]:
        """Variables that occur with a nonzero exponent."""
        used = [False] * len(self.variables)
        for e in self._terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def univariate_variable(self) -> str | None:
        s = self.support()
        if len(s) > 1:
            return None
        return s[0] if s else None

    def _index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise VariableMismatchError(f"{var!r} not among {self.variables}") from None

    def to_dense(self, var: str | None = None) -> list:
        """Dense coefficient list (lowest degree first) of a univariate polynomial."""
        support = self.support()
        if var is None:
            var = support[0] if support else self.variables[0]
        if any(v != var for v in support):
            raise ValueError(f"polynomial is not univariate in {var}: {self}")
        i = self._index(var)
        out = [Fraction(0)] * (self.degree(var) + 1)
        for e, c in self._terms.items():
            out[e[i]] = c
        return out

    # -- arithmetic -------------------------------------------------------------
    def _check(self, other: "MultiPoly") -> None:
        if self.variables != other.variables or self.order != other.order:
            raise VariableMismatchError(
                f"context mismatch: {self.variables}/{self.order} vs {other.variables}/{other.order}")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(other, self.variables, self.order)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            if e in out:
                v = out[e] + c
                if v:
                    out[e] = v
                else:
                    del out[e]
            else:
                out[e] = c
        return MultiPoly._raw(self.variables, self.order, _normalize_values(out))

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.variables, self.order, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = coerce_coefficient(other)
            if not c:
                return MultiPoly.zero(self.variables, self.order)
            return MultiPoly._raw(self.variables, self.order,
                                  _normalize_values({e: v * c for e, v in self._terms.items()}))
        self._check(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = mono_mul(e1, e2)
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        out = {e: c for e, c in out.items() if c}
        return MultiPoly._raw(self.variables, self.order, _normalize_values(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                raise TypeError("use exact_divide for polynomial division")
            other = other.constant_term()
        c = coerce_coefficient(other)
        return self * (Fraction(1) / c if isinstance(c, Fraction) else 1 / c)

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(1, self.variables, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return (self.variables == other.variables and self.order == other.order
                    and self._terms == other._terms)
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(other, self.variables, self.order)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.variables, self.order.name, frozenset(self._terms.items())))

    # -- structural operations ------------------------------------------------
    def with_context(self, variables: Sequence[str], order=None) -> "MultiPoly":
        """Re-embed into another variable sequence (missing variables must be absent)."""
        variables = tuple(variables)
        order = get_order(order) if order is not None else self.order
        pos = {v: i for i, v in enumerate(variables)}
        for v in self.support():
            if v not in pos:
                raise VariableMismatchError(f"variable {v!r} missing from {variables}")
        idx = [pos.get(v) for v in self.variables]
        out = {}
        for e, c in self._terms.items():
            ne = [0] * len(variables)
            for i, x in enumerate(e):
                if x:
                    ne[idx[i]] = x
            out[tuple(ne)] = c
        return MultiPoly._raw(variables, order, out)

    def evaluate(self, assignment: Mapping[str, object], n0=None):
        """Exact value at ``assignment``; parametric coefficients need ``n0``."""
        missing = [v for v in self.support() if v not in assignment]
        if missing:
            raise KeyError(f"no value given for {missing}")
        vals = [to_rational(assignment[v]) if v in assignment else None for v in self.variables]
        total = Fraction(0)
        powers: list[dict[int, Fraction]] = [{} for _ in self.variables]
        for e, c in self._terms.items():
            if isinstance(c, ParamCoefficient):
                if n0 is None:
                    raise ValueError("parametric coefficient needs a value for n")
                c = c(n0)
            term = c
            for i, k in enumerate(e):
                if k:
                    p = powers[i].get(k)
                    if p is None:
                        p = powers[i][k] = vals[i] ** k
                    term = term * p
            total += term
        return total

    def evaluate_generic(self, assignment: Mapping[str, object]):
        """Evaluate with values from any exact field (no rational conversion)."""
        vals = [coerce_coefficient(assignment[v]) if v in assignment else None
                for v in self.variables]
        total = Fraction(0)
        for e, c in self._terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t = t * x ** k
            total = total + t
        return total

    def substitute(self, bindings: Mapping[str, object]) -> "MultiPoly":
        """Replace variables by polynomials (same context) or constants."""
        subs = {}
        for v, q in bindings.items():
            i = self._index(v)
            subs[i] = q if isinstance(q, MultiPoly) else MultiPoly.constant(q, self.variables, self.order)
            self._check(subs[i])
        cache: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, k: int) -> MultiPoly:
            if (i, k) not in cache:
                cache[(i, k)] = subs[i] ** k
            return cache[(i, k)]

        result = MultiPoly.zero(self.variables, self.order)
        for e, c in self._terms.items():
            kept = tuple(0 if i in subs else x for i, x in enumerate(e))
            term = MultiPoly._raw(self.variables, self.order, {kept: c})
            for i, k in enumerate(e):
                if k and i in subs:
                    term = term * power(i, k)
            result = result + term
        return result

    def specialize(self, n0) -> "MultiPoly":
        """Evaluate every Q(n) coefficient at ``n = n0``."""
        out = {}
        for e, c in self._terms.items():
            v = specialize_coefficient(c, n0)
            if v:
                out[e] = v
        return MultiPoly._raw(self.variables, self.order, out)

    def map_coefficients(self, f) -> "MultiPoly":
        return MultiPoly(self.variables, {e: f(c) for e, c in self._terms.items()}, self.order)

    def derivative(self, var: str | None = None) -> "MultiPoly":
        if var is None:
            var = self.univariate_variable()
            if var is None:
                if self.is_constant():
                    return MultiPoly.zero(self.variables, self.order)
                raise ValueError(f"derivative needs a variable for multivariate {self}")
        i = self._index(var)
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = c * k
        return MultiPoly._raw(self.variables, self.order, out)

    def monic(self) -> "MultiPoly":
        lc = self.leading_coefficient
        return self * (1 / lc if not isinstance(lc, Fraction) else Fraction(1) / lc)

    def content_primitive(self):
        """Split into (content, primitive part) with ``self == content * primitive``.

        Over Q the primitive part has coprime integer coefficients; over Q(n)
        its coefficients are integer polynomials in n without common factor.
        Either way its leading coefficient is positive (for Q(n): positive
        leading coefficient in n).
        """
        if not self._terms:
            raise ValueError("content of the zero polynomial is undefined")
        coeffs = list(self._terms.values())
        if any(isinstance(c, ParamCoefficient) for c in coeffs):
            return _param_content_primitive(self)
        if not all(isinstance(c, Fraction) for c in coeffs):
            lc = self.leading_coefficient
            return lc, self.monic()
        den = lcm(*(c.denominator for c in coeffs))
        num = gcd(*(c.numerator * (den // c.denominator) for c in coeffs))
        content = Fraction(num, den)
        if self.leading_coefficient < 0:
            content = -content
        prim = {e: c / content for e, c in self._terms.items()}
        return content, MultiPoly._raw(self.variables, self.order, prim)

    def primitive(self) -> "MultiPoly":
        return self.content_primitive()[1]

    # -- display ----------------------------------------------------------------
    def __repr__(self) -> str:
        return f"MultiPoly({self}; vars={list(self.variables)}, order={self.order.name})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            if isinstance(c, Fraction):
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                if not mono:
                    body = str(mag)
                elif mag == 1:
                    body = mono
                else:
                    body = f"{mag}*{mono}"
            else:
                sign = "+"
                body = f"({c})" + (f"*{mono}" if mono else "")
            parts.append((sign, body))
        text = "".join(f" {s} {b}" for s, b in parts).strip()
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _normalize_values(terms: dict) -> dict:
    for e, c in terms.items():
        if isinstance(c, ParamCoefficient) and c.is_constant():
            terms[e] = c.constant_value()
    return terms


def _param_content_primitive(p: MultiPoly):
    coeffs = [c if isinstance(c, ParamCoefficient) else ParamCoefficient(c)
              for c in p._terms.values()]
    # clear n-denominators, then strip the common polynomial factor
    den = ParamPoly((1,))
    for c in coeffs:
        den = den * (c.den // den.gcd(c.den))
    nums = [c.num * (den // c.den) for c in coeffs]
    g = ParamPoly(())
    for x in nums:
        g = x.gcd(g)
    nums = [x // g for x in nums]
    # integer coefficients without a common integer factor
    dl = lcm(*(c.denominator for x in nums for c in x.coeffs))
    ints = [c.numerator * (dl // c.denominator) for x in nums for c in x.coeffs]
    scale = Fraction(gcd(*ints), dl)
    prim_terms = {e: x * (1 / scale) for e, x in zip(p._terms, nums)}
    lead = p.leading_monomial
    if prim_terms[lead].lc < 0:
        prim_terms = {e: -x for e, x in prim_terms.items()}
    prim = MultiPoly(p.variables, prim_terms, p.order)
    content = coerce_coefficient(
        ParamCoefficient(p._terms[lead]) / ParamCoefficient(prim_terms[lead]))
    return content, prim


def exact_divide(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Quotient a/b, raising ValueError when b does not divide a."""
    from .. import groebner

    quotients, rem = groebner.divide(a, [b])
    if rem:
        raise ValueError("polynomial division is not exact")
    return quotients[0]


def equal_up_to_scalar(a: MultiPoly, b: MultiPoly):
    """Return the scalar c with a == c*b, or None."""
    if not a or not b:
        return None if (a or b) else Fraction(1)
    if set(a._terms) != set(b._terms):
        return None
    e = a.leading_monomial
    c = coerce_coefficient(a._terms[e] / b._terms[e])
    for m, x in a._terms.items():
        if x != c * b._terms[m]:
            return None
    return c


def poly_from_terms(variables: Iterable[str], items: Iterable[tuple[Monomial, object]], order="lex"):
    return MultiPoly(tuple(variables), dict(items), order)
