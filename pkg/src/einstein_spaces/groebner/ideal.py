"""Ideals, Groebner bases, normal forms, saturation and elimination."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import gmpy2

from ..polycore import MultiPoly, ParamCoefficient, get_order
from ..polycore.multipoly import VariableMismatchError
from . import engine
from .engine import Budget, GroebnerBudgetError, Packer, Poly, Reducer, Stats


# -- coefficient domains ------------------------------------------------------
class _Domain:
    """Conversion between MultiPoly coefficients and engine coefficients."""

    def __init__(self, parametric: bool):
        self.parametric = parametric
        self.one = ParamCoefficient(1) if parametric else gmpy2.mpq(1)

    @classmethod
    def for_polys(cls, polys) -> "_Domain":
        return cls(any(p.is_parametric for p in polys))

    def into(self, c):
        if self.parametric:
            return c if isinstance(c, ParamCoefficient) else ParamCoefficient(c)
        return gmpy2.mpq(c.numerator, c.denominator)

    def out(self, c):
        if self.parametric:
            return c.constant_value() if c.is_constant() else c
        return Fraction(int(c.numerator), int(c.denominator))


def _to_terms(p: MultiPoly, packer: Packer, dom: _Domain) -> dict:
    return {packer.pack(e): dom.into(c) for e, c in p.terms.items()}


def _to_integer_terms(p: MultiPoly, packer: Packer) -> dict:
    _, prim = p.content_primitive()
    return {packer.pack(e): gmpy2.mpz(c.numerator) for e, c in prim.terms.items()}


def _from_terms(terms: dict, variables, order, packer: Packer, dom: _Domain) -> MultiPoly:
    return MultiPoly(variables, {packer.unpack(k): dom.out(c) for k, c in terms.items()}, order)


def _poly_out(p: Poly, variables, order, packer, dom) -> MultiPoly:
    if p.lc is not None:
        lc = gmpy2.mpq(p.lc)
        terms = {p.lm: dom.one}
        terms.update((k, c / lc) for k, c in p.tail)
    else:
        terms = {p.lm: dom.one}
        terms.update(p.tail)
    return _from_terms(terms, variables, order, packer, dom)


def _context(polys: Sequence[MultiPoly], variables=None, order=None):
    if not polys and variables is None:
        raise ValueError("empty polynomial list needs explicit variables")
    variables = tuple(variables) if variables is not None else polys[0].variables
    order = get_order(order) if order is not None else (polys[0].order if polys else get_order("lex"))
    return variables, order, [p.with_context(variables, order) for p in polys]


# -- data types -----------------------------------------------------------------
@dataclass
class Ideal:
    generators: list
    variables: tuple
    saturation_factors: list = field(default_factory=list)
    saturation_variable: str | None = None

    def __init__(self, generators: Sequence[MultiPoly], variables=None, saturation_factors=None,
                 saturation_variable=None):
        gens = [g for g in generators if g]
        if not gens and variables is None:
            raise ValueError("ideal needs generators or variables")
        self.variables = tuple(variables) if variables is not None else gens[0].variables
        self.generators = [g.with_context(self.variables) for g in gens]
        self.saturation_factors = list(saturation_factors or [])
        self.saturation_variable = saturation_variable

    def with_order(self, order) -> list[MultiPoly]:
        return [g.with_context(self.variables, order) for g in self.generators]

    def specialize(self, n0) -> "Ideal":
        return Ideal([g.specialize(n0) for g in self.generators], self.variables,
                     [f.specialize(n0) for f in self.saturation_factors], self.saturation_variable)

    def reorder(self, variables) -> "Ideal":
        variables = tuple(variables)
        if set(variables) != set(self.variables):
            raise VariableMismatchError("reordering must keep the same variables")
        return Ideal([g.with_context(variables) for g in self.generators], variables,
                     self.saturation_factors, self.saturation_variable)


@dataclass
class GroebnerBasis:
    basis: list
    variables: tuple
    order: object
    reduced: bool = True
    stats: dict = field(default_factory=dict)
    strategy: str = "normal"
    saturation_factors: list = field(default_factory=list)
    elapsed: float = 0.0

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def normal_form(self, p: MultiPoly) -> MultiPoly:
        return normal_form(p, self.basis)

    def contains(self, p: MultiPoly) -> bool:
        return not self.normal_form(p.with_context(self.variables, self.order))

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial for g in self.basis]

    def to_json_dict(self) -> dict:
        from ..polycore import to_json_dict
        return {
            "variables": list(self.variables),
            "order": self.order.name,
            "reduced": self.reduced,
            "strategy": self.strategy,
            "stats": self.stats,
            "saturation": [str(f) for f in self.saturation_factors],
            "basis": [to_json_dict(g) for g in self.basis],
        }


# -- operations -----------------------------------------------------------------
def s_polynomial(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """S(f,g) = (L/lt f) f - (L/lt g) g with L = lcm of leading monomials."""
    if not f or not g:
        raise ValueError("S-polynomial of a zero polynomial")
    f._check(g)
    L = tuple(max(a, b) for a, b in zip(f.leading_monomial, g.leading_monomial))
    mf = tuple(a - b for a, b in zip(L, f.leading_monomial))
    mg = tuple(a - b for a, b in zip(L, g.leading_monomial))
    tf = MultiPoly(f.variables, {mf: 1 / f.leading_coefficient}, f.order)
    tg = MultiPoly(f.variables, {mg: 1 / g.leading_coefficient}, f.order)
    return tf * f - tg * g


def divide(p: MultiPoly, divisors: Sequence[MultiPoly]):
    """Multivariate division: returns (quotients, remainder) with
    p == sum(q_i * divisors_i) + remainder.

    Divisor choice: smallest leading monomial first, then lowest index.
    """
    if any(not d for d in divisors):
        raise ValueError("division by the zero polynomial")
    variables, order, divs = _context(list(divisors), p.variables, p.order)
    p = p.with_context(variables, order)
    dom = _Domain.for_polys([p] + divs)
    packer = Packer(len(variables), order.name)
    monic = []
    lcs = []
    for i, d in enumerate(divs):
        m, lc = engine.make_monic(_to_terms(d, packer, dom), packer, dom.one)
        m.index = i
        monic.append(m)
        lcs.append(lc)
    quot: dict = {}
    rem = Reducer(monic).reduce(_to_terms(p, packer, dom), packer, quotients=quot)
    quotients = []
    for i in range(len(divs)):
        q = quot.get(i, {})
        inv = dom.one / lcs[i]
        quotients.append(_from_terms({k: c * inv for k, c in q.items()}, variables, order, packer, dom))
    return quotients, _from_terms(rem, variables, order, packer, dom)


def normal_form(p: MultiPoly, basis: Sequence[MultiPoly]) -> MultiPoly:
    if not basis:
        return p
    return divide(p, basis)[1]


def buchberger(ideal, order=None, variables=None, max_pairs=None, max_terms=None,
               strategy: str = "normal") -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` (an Ideal or a list of MultiPoly)."""
    if isinstance(ideal, Ideal):
        variables = variables or ideal.variables
        gens = ideal.generators
        sat = ideal.saturation_factors
    else:
        gens = [g for g in ideal if g]
        sat = []
    variables, order, gens = _context(gens, variables, order)
    dom = _Domain.for_polys(gens)
    packer = Packer(len(variables), order.name)
    stats = Stats()
    budget = Budget.resolve(max_pairs, max_terms)
    t0 = time.perf_counter()
    if dom.parametric:
        start = [_to_terms(g, packer, dom) for g in gens]
    else:
        start = [_to_integer_terms(g, packer) for g in gens]
    basis = engine.buchberger(start, packer, dom.one, budget, stats, strategy,
                              integer=not dom.parametric)
    elapsed = time.perf_counter() - t0
    out = [_poly_out(b, variables, order, packer, dom) for b in basis] if gens else []
    return GroebnerBasis(out, variables, order, True, stats.as_dict(), strategy=strategy,
                         saturation_factors=list(sat), elapsed=elapsed)


def is_groebner(basis: Sequence[MultiPoly]) -> bool:
    """Buchberger criterion: all S-polynomials reduce to zero."""
    basis = [b for b in basis if b]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if normal_form(s_polynomial(basis[i], basis[j]), basis):
                return False
    return True


def is_reduced(basis: Sequence[MultiPoly]) -> bool:
    for i, g in enumerate(basis):
        if g.leading_coefficient != 1:
            return False
        for j, h in enumerate(basis):
            if i == j:
                continue
            lm = h.leading_monomial
            if any(all(a <= b for a, b in zip(lm, e)) for e in g.terms):
                return False
    return True


def fresh_variable(variables, base="z") -> str:
    if base not in variables:
        return base
    k = 0
    while f"{base}{k}" in variables:
        k += 1
    return f"{base}{k}"


def saturate(ideal, factor: MultiPoly, var: str | None = None) -> Ideal:
    """Rabinowitsch encoding: adjoin a fresh first variable z and z*factor - 1."""
    if not isinstance(ideal, Ideal):
        ideal = Ideal(list(ideal))
    if not factor:
        raise ValueError("cannot saturate by the zero polynomial")
    var = var or fresh_variable(ideal.variables)
    variables = (var,) + ideal.variables
    gens = [g.with_context(variables) for g in ideal.generators]
    f = factor.with_context(variables)
    z = MultiPoly.variable(var, variables, f.order)
    gens.append(z * f - 1)
    return Ideal(gens, variables, list(ideal.saturation_factors) + [factor], var)


def elimination_polynomial(gb: GroebnerBasis, keep: str) -> MultiPoly | None:
    """Minimal-degree basis element involving only ``keep`` (lex, keep last)."""
    if gb.order.name != "lex" or gb.variables[-1] != keep:
        raise ValueError("elimination needs a lex basis with the kept variable last")
    cands = [g for g in gb.basis if set(g.support()) <= {keep}]
    if not cands:
        return None
    return min(cands, key=lambda g: g.degree(keep))


def univariate_elements(gb: GroebnerBasis, var: str) -> list[MultiPoly]:
    return [g for g in gb.basis if g.support() == (var,)]


def standard_monomials(gb: GroebnerBasis, limit: int = 100000) -> list[tuple] | None:
    """Monomials not divisible by any leading monomial; None if infinitely many."""
    lms = gb.leading_monomials()
    nv = len(gb.variables)
    bounds = []
    for i in range(nv):
        pure = [m[i] for m in lms if m[i] and all(x == 0 for j, x in enumerate(m) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    out = []

    def rec(prefix):
        i = len(prefix)
        if i == nv:
            if not any(all(a <= b for a, b in zip(m, prefix)) for m in lms):
                out.append(tuple(prefix))
            return
        for k in range(bounds[i]):
            rec(prefix + [k])
            if len(out) > limit:
                raise GroebnerBudgetError("quotient ring too large")

    rec([])
    return out


def minimal_polynomial(gb: GroebnerBasis, var: str, max_degree: int | None = None) -> MultiPoly:
    """Minimal polynomial of multiplication by ``var`` on the quotient ring.

    Computes normal forms of 1, v, v^2, ... and stops at the first linear
    dependency. For a zero-dimensional ideal this generates the elimination
    ideal in ``var`` and works from a basis in any order.
    """
    variables, order = gb.variables, gb.order
    dom = _Domain.for_polys(gb.basis)
    packer = Packer(len(variables), order.name)
    monic = []
    for i, g in enumerate(gb.basis):
        m, _ = engine.make_monic(_to_terms(g, packer, dom), packer, dom.one)
        m.index = i
        monic.append(m)
    red = Reducer(monic)
    if gb.is_unit():
        return MultiPoly.constant(1, (var,))
    std = standard_monomials(gb)
    dim = len(std) if std is not None else None
    if max_degree is None:
        if dim is None:
            raise ValueError("ideal is not zero-dimensional")
        max_degree = dim
    vkey = packer.pack(tuple(1 if v == var else 0 for v in variables))

    # incremental elimination: rows are (pivot key, vector, combination)
    rows: list[tuple[int, dict, dict]] = []
    cur = red.reduce({0: dom.one}, packer)
    for k in range(max_degree + 1):
        vec = dict(cur)
        comb = {k: dom.one}
        for piv, rvec, rcomb in rows:
            c = vec.get(piv)
            if c:
                for key, val in rvec.items():
                    nv = vec.get(key, 0) - c * val
                    if nv:
                        vec[key] = nv
                    else:
                        vec.pop(key, None)
                for key, val in rcomb.items():
                    nv = comb.get(key, 0) - c * val
                    if nv:
                        comb[key] = nv
                    else:
                        comb.pop(key, None)
        if not vec:
            coeffs = [dom.out(comb.get(i, 0)) if comb.get(i, 0) else Fraction(0) for i in range(k + 1)]
            p = MultiPoly.from_univariate(coeffs, var)
            return p.monic()
        piv = max(vec)
        inv = dom.one / vec[piv]
        vec = {key: val * inv for key, val in vec.items()}
        comb = {key: val * inv for key, val in comb.items()}
        rows.append((piv, vec, comb))
        # next power: multiply current normal form by var and reduce
        cur = red.reduce({key + vkey: val for key, val in cur.items()}, packer)
    raise ValueError(f"no dependency up to degree {max_degree}")
