"""Canonical JSON form for MultiPoly.

Rational coefficients are stored as decimal-string ``num``/``den``; Q(n)
coefficients store integer coefficient lists (ascending degree) under
``{"n_poly": [...]}`` for both parts.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd, lcm

from .multipoly import MultiPoly
from .param import ParamCoefficient, ParamPoly


def _int_poly_pair(c: ParamCoefficient) -> tuple[list[int], list[int]]:
    dens = [x.denominator for x in c.num.coeffs + c.den.coeffs]
    m = lcm(*dens)
    num = [int(x * m) for x in c.num.coeffs]
    den = [int(x * m) for x in c.den.coeffs]
    g = gcd(*num, *den)
    return [x // g for x in num], [x // g for x in den]


def coefficient_to_json(c) -> tuple:
    if isinstance(c, ParamCoefficient):
        num, den = _int_poly_pair(c)
        return {"n_poly": [str(x) for x in num]}, {"n_poly": [str(x) for x in den]}
    c = Fraction(c)
    return str(c.numerator), str(c.denominator)


def coefficient_from_json(num, den):
    if isinstance(num, dict) or isinstance(den, dict):
        def part(x):
            if isinstance(x, dict):
                return ParamPoly(int(v) for v in x["n_poly"])
            return ParamPoly((int(x),))
        return ParamCoefficient(part(num), part(den))
    return Fraction(int(num), int(den))


def to_json_dict(p: MultiPoly) -> dict:
    terms = []
    for exp, c in p.items():
        num, den = coefficient_to_json(c)
        terms.append({"exp": list(exp), "num": num, "den": den})
    return {"vars": list(p.variables), "order": p.order.name, "terms": terms}


def from_json_dict(d: dict) -> MultiPoly:
    terms = {}
    for t in d["terms"]:
        exp = tuple(t["exp"])
        if exp in terms:
            raise ValueError(f"duplicate monomial {exp}")
        terms[exp] = coefficient_from_json(t["num"], t.get("den", "1"))
    return MultiPoly(d["vars"], terms, d.get("order", "lex"))


def dumps(p: MultiPoly, indent=None) -> str:
    return json.dumps(to_json_dict(p), indent=indent, separators=(",", ":") if indent is None else None)


def loads(text: str) -> MultiPoly:
    return from_json_dict(json.loads(text))
