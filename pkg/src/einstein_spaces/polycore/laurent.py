"""Laurent polynomials in the metric scales (negative exponents allowed).

Ricci components are sums of terms like c * x_k / (x_i x_j); storing them as
Laurent polynomials keeps every operation exact and makes denominator
clearing a single monomial shift.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .multipoly import MultiPoly, coerce_coefficient
from .rational import to_rational


class LaurentPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.variables = tuple(variables)
        clean: dict = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != len(self.variables):
                raise ValueError(f"exponent {e} does not match {self.variables}")
            c = coerce_coefficient(c)
            v = clean.get(e)
            v = c if v is None else v + c
            if v:
                clean[e] = v
            else:
                clean.pop(e, None)
        self.terms = clean

    @classmethod
    def monomial(cls, variables, exps: Mapping[str, int], coeff=1) -> "LaurentPoly":
        variables = tuple(variables)
        e = tuple(exps.get(v, 0) for v in variables)
        return cls(variables, {e: coeff})

    @classmethod
    def zero(cls, variables) -> "LaurentPoly":
        return cls(variables, {})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _other(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise ValueError("variable mismatch")
            return other
        return LaurentPoly(self.variables, {(0,) * len(self.variables): other})

    def __add__(self, other):
        other = self._other(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = coerce_coefficient(other)
            return LaurentPoly(self.variables, {e: v * c for e, v in self.terms.items()})
        other = self._other(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return LaurentPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only single terms have Laurent inverses")
            (e, c), = self.terms.items()
            inv = LaurentPoly(self.variables, {tuple(-x for x in e): 1 / c})
            return inv ** (-k)
        out = LaurentPoly(self.variables, {(0,) * len(self.variables): 1})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            other = self._other(other)
        return self.variables == other.variables and (self - other).terms == {}

    __hash__ = None

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if degree is not None:
            return degs <= {degree}
        return len(degs) <= 1

    def evaluate(self, values: Mapping[str, object], n0=None):
        from .param import specialize_coefficient

        vals = [to_rational(values[v]) for v in self.variables]
        total = Fraction(0)
        for e, c in self.terms.items():
            if n0 is not None:
                c = specialize_coefficient(c, n0)
            t = c
            for x, k in zip(vals, e):
                if k:
                    t = t * x ** k
            total = total + t
        return total

    def evaluate_generic(self, values: Mapping[str, object]):
        """Evaluate with values from any exact field (e.g. rational functions)."""
        vals = [coerce_coefficient(values[v]) for v in self.variables]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t = t * x ** k
            total = total + t
        return total

    def substitute_values(self, values: Mapping[str, object]) -> "LaurentPoly":
        """Bind some variables to nonzero constants; they stay in the context."""
        idx = {v: i for i, v in enumerate(self.variables)}
        bound = {idx[v]: coerce_coefficient(c) for v, c in values.items()}
        out: dict = {}
        for e, c in self.terms.items():
            ne = list(e)
            for i, val in bound.items():
                if e[i]:
                    c = c * val ** e[i]
                    ne[i] = 0
            ne = tuple(ne)
            out[ne] = out[ne] + c if ne in out else c
        return LaurentPoly(self.variables, out)

    def specialize(self, n0) -> "LaurentPoly":
        from .param import specialize_coefficient

        return LaurentPoly(self.variables,
                           {e: specialize_coefficient(c, n0) for e, c in self.terms.items()})

    def min_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * len(self.variables)
        return tuple(min(e[i] for e in self.terms) for i in range(len(self.variables)))

    def clear_denominators(self, keep: Sequence[str] | None = None, order="lex") -> MultiPoly:
        """Multiply by the smallest monomial making all exponents non-negative.

        Only the leftover negative powers are cleared, so variables that were
        pinned with :meth:`substitute_values` drop out. ``keep`` selects and
        orders the variables of the resulting MultiPoly.
        """
        shift = tuple(-m for m in self.min_exponents())
        keep = tuple(keep) if keep is not None else self.variables
        pos = [self.variables.index(v) for v in keep]
        terms = {}
        for e, c in self.terms.items():
            ne = tuple(a + s for a, s in zip(e, shift))
            for i, x in enumerate(ne):
                if x and i not in pos:
                    raise ValueError(f"variable {self.variables[i]} survives clearing")
            terms[tuple(ne[i] for i in pos)] = c
        return MultiPoly(keep, terms, order)

    def __repr__(self) -> str:
        if not self.terms:
            return "LaurentPoly(0)"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"{v}^{k}" if k != 1 else v for v, k in zip(self.variables, e) if k)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return "LaurentPoly(" + " + ".join(parts) + ")"
