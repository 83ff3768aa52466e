"""Parse polynomial expressions such as ``"n*x1*x12^2 - 5*x13^2 + 3"``.

The grammar is Python's expression grammar (via :mod:`ast`) restricted to
numbers, names, ``+ - * /`` and integer powers; ``^`` is accepted as power.
The parameter ``n`` becomes a Q(n) coefficient unless it is listed among the
variables. Division is only allowed by constants, or by a single monomial
when parsing Laurent expressions.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from typing import Mapping, Sequence

from .laurent import LaurentPoly
from .multipoly import MultiPoly
from .param import ParamCoefficient


class ParseError(ValueError):
    pass


_ALLOWED_BIN = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def _tree(text: str) -> ast.AST:
    try:
        return ast.parse(text.replace("^", "**").strip(), mode="eval").body
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None


def _eval(node, leaf, div):
    if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BIN):
        a = _eval(node.left, leaf, div)
        if isinstance(node.op, ast.Pow):
            k = _eval(node.right, leaf, div)
            if isinstance(k, Fraction) and k.denominator == 1:
                k = int(k)
            if not isinstance(k, int):
                raise ParseError("exponents must be integer literals")
            if k < 0:
                return div(1, a) if k == -1 else div(1, a ** (-k))
            return a ** k
        b = _eval(node.right, leaf, div)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        return div(a, b)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, leaf, div)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.Name):
        return leaf(node.id)
    raise ParseError(f"unsupported syntax: {ast.dump(node)}")


def _const_value(x):
    if isinstance(x, (Fraction, ParamCoefficient)):
        return x
    if isinstance(x, MultiPoly) and x.is_constant():
        return x.constant_term()
    if isinstance(x, LaurentPoly) and all(not any(e) for e in x.terms):
        return next(iter(x.terms.values()), Fraction(0))
    return None


def parse_poly(text: str, variables: Sequence[str], order="lex",
               values: Mapping[str, object] | None = None, param: str = "n") -> MultiPoly:
    """Parse ``text`` into a MultiPoly over the given variables.

    ``values`` binds names to rational constants (or Q(n) coefficients) before
    evaluation; ``param`` names the Q(n) generator.
    """
    variables = tuple(variables)
    values = dict(values or {})

    def leaf(name):
        if name in values:
            return MultiPoly.constant(values[name], variables, order)
        if name in variables:
            return MultiPoly.variable(name, variables, order)
        if name == param:
            return MultiPoly.constant(ParamCoefficient.gen(), variables, order)
        raise ParseError(f"unknown symbol {name!r}")

    def div(a, b):
        c = _const_value(b)
        if c is None:
            raise ParseError("division by a non-constant polynomial")
        if not c:
            raise ParseError("division by zero")
        if isinstance(a, Fraction) or isinstance(a, int):
            a = MultiPoly.constant(a, variables, order)
        return a / c

    out = _eval(_tree(text), leaf, div)
    if not isinstance(out, MultiPoly):
        out = MultiPoly.constant(out, variables, order)
    return out


def parse_laurent(text: str, variables: Sequence[str], values: Mapping[str, object] | None = None,
                  param: str = "n") -> LaurentPoly:
    """Parse allowing division by single-term expressions."""
    variables = tuple(variables)
    values = dict(values or {})

    def leaf(name):
        if name in values:
            return LaurentPoly(variables, {(0,) * len(variables): values[name]})
        if name in variables:
            return LaurentPoly.monomial(variables, {name: 1})
        if name == param:
            return LaurentPoly(variables, {(0,) * len(variables): ParamCoefficient.gen()})
        raise ParseError(f"unknown symbol {name!r}")

    def div(a, b):
        if not isinstance(a, LaurentPoly):
            a = LaurentPoly(variables, {(0,) * len(variables): a})
        if not isinstance(b, LaurentPoly):
            b = LaurentPoly(variables, {(0,) * len(variables): b})
        if len(b.terms) != 1:
            raise ParseError("can only divide by a single nonzero term")
        (e, c), = b.terms.items()
        return a * LaurentPoly(variables, {tuple(-x for x in e): Fraction(1) / c if isinstance(c, Fraction) else 1 / c})

    out = _eval(_tree(text), leaf, div)
    if not isinstance(out, LaurentPoly):
        out = LaurentPoly(variables, {(0,) * len(variables): out})
    return out


def parse_param(text: str, param: str = "n"):
    """Parse an expression in the parameter alone, returning a Q(n) element or rational."""
    p = parse_poly(text, (), param=param)
    return p.constant_term()
