"""Positive solutions of a square Einstein system: eliminate, isolate, back-substitute, certify."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from ..groebner import (GroebnerBasis, Ideal, buchberger, elimination_polynomial, minimal_polynomial,
                        saturate, standard_monomials)
from ..polycore import MultiPoly, decimal_str, rational_str, to_rational
from ..realroots import IsolatingInterval, isolate_roots, refine
from ..realroots import univariate as U
from .intervals import Interval, eval_interval, jacobian, krawczyk

DEFAULT_WIDTH = Fraction(1, 10 ** 20)
CLASSIFICATIONS = ("jensen", "kahler", "new", "unverified")


class NonTriangularError(ValueError):
    """Remaining variables are not determined by the pinned ones."""


class VanishingDenominatorError(ValueError):
    pass


@dataclass
class SolutionRecord:
    case_id: str
    parameters: dict
    box: dict  # variable -> Interval (a point interval for exact values)
    classification: str
    residual_bound: Fraction
    verified: bool
    certificate: str  # "krawczyk", "exact" or "ideal-membership"
    provenance: dict = field(default_factory=dict)
    exact: dict = field(default_factory=dict)  # variable -> closed form text
    notes: list = field(default_factory=list)

    def value(self, var: str) -> Interval:
        return self.box[var]

    def is_exact(self, var: str) -> bool:
        return self.box[var].width == 0

    def to_json_dict(self, digits: int = 30) -> dict:
        box = {}
        for v, iv in self.box.items():
            if iv.width == 0:
                box[v] = {"exact": rational_str(iv.lo)}
            else:
                box[v] = {"low": rational_str(iv.lo), "high": rational_str(iv.hi),
                          "approx": decimal_str(iv.mid, digits), "width": decimal_str(iv.width, 3)}
            if v in self.exact:
                box[v]["closed_form"] = self.exact[v]
        return {
            "case": self.case_id,
            "parameters": {k: rational_str(Fraction(v)) for k, v in self.parameters.items()},
            "classification": self.classification,
            "verified": self.verified,
            "certificate": self.certificate,
            "residual_bound": rational_str(self.residual_bound) if self.residual_bound else "0",
            "box": box,
            "provenance": {k: _plain(v) for k, v in self.provenance.items()},
            "notes": list(self.notes),
        }


def _plain(v):
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (str, int, bool)) or v is None:
        return v
    if isinstance(v, Fraction):
        return rational_str(v)
    return str(v)


# -- rational helpers -------------------------------------------------------------
def simplest_rational(a: Fraction, b: Fraction) -> Fraction:
    """Rational with the smallest denominator in [a, b] (continued fractions)."""
    a, b = to_rational(a), to_rational(b)
    if a > b:
        a, b = b, a
    if a <= 0 <= b:
        return Fraction(0)
    if b < 0:
        return -simplest_rational(-b, -a)
    fl = math.floor(a)
    if fl == a:
        return Fraction(fl)
    if fl + 1 <= b:
        return Fraction(fl + 1)
    return fl + 1 / simplest_rational(1 / (b - fl), 1 / (a - fl))


def exact_root(iv: IsolatingInterval) -> Fraction | None:
    """The root itself when it is a rational with a modest denominator."""
    if iv.exact is not None:
        return iv.exact
    c = simplest_rational(iv.low, iv.high)
    if c.denominator < 10 ** 12 and U.eval_sign(iv.poly, c) == 0:
        return c
    return None


def as_interval(v) -> Interval:
    if isinstance(v, Interval):
        return v
    if isinstance(v, IsolatingInterval):
        return Interval(v.low, v.high) if v.exact is None else Interval.point(v.exact)
    return Interval.point(v)


# -- back substitution ------------------------------------------------------------
def _split_linear(g: MultiPoly, v: str):
    """g = a*v + b with a, b free of v."""
    i = g.variables.index(v)
    a, b = {}, {}
    for e, c in g.terms.items():
        if e[i] == 1:
            a[e[:i] + (0,) + e[i + 1:]] = c
        else:
            b[e] = c
    return MultiPoly(g.variables, a, g.order), MultiPoly(g.variables, b, g.order)


def back_substitute(gb: GroebnerBasis, pinned: Mapping[str, object], targets: Sequence[str] | None = None,
                    width=DEFAULT_WIDTH) -> list[dict]:
    """Candidate boxes for ``targets`` given pinned values.

    Linear basis elements a*v + b are used first (exact when everything known
    is exact and a != 0; interval division otherwise). When no linear element
    determines v and the known values are exact, a univariate element in v is
    solved by root isolation, which may branch. Pinned values that are not
    roots give an empty list.
    """
    targets = list(targets if targets is not None else [v for v in gb.variables if v not in pinned])
    start = {v: as_interval(x) for v, x in pinned.items()}
    return _back(gb, start, [t for t in targets if t not in start], to_rational(width))


def _consistent(gb: GroebnerBasis, known: dict) -> bool:
    for g in gb.basis:
        sup = set(g.support())
        if sup and sup <= set(known):
            if not eval_interval(g, known).contains_zero():
                return False
    return True


def _back(gb: GroebnerBasis, known: dict, todo: list, width: Fraction) -> list[dict]:
    if not _consistent(gb, known):
        return []
    if not todo:
        return [known]
    kset = set(known)
    exact_known = all(iv.width == 0 for iv in known.values())
    reasons = []
    for v in todo:
        for g in sorted((g for g in gb.basis if g.degree(v) == 1 and set(g.support()) <= kset | {v}),
                        key=lambda g: (len(g.terms), g.total_degree())):
            a, b = _split_linear(g, v)
            if exact_known:
                pt = {k: iv.lo for k, iv in known.items()}
                av = a.evaluate(pt)
                if av == 0:
                    reasons.append(f"{v}: coefficient vanishes")
                    continue
                val = Interval.point(-b.evaluate(pt) / av)
            else:
                A = eval_interval(a, known)
                if A.contains_zero():
                    reasons.append(f"{v}: coefficient interval contains 0")
                    continue
                val = (-eval_interval(b, known) / A).rounded()
            rest = [t for t in todo if t != v]
            return _back(gb, dict(known, **{v: val}), rest, width)
    if exact_known:
        pt = {k: iv.lo for k, iv in known.items()}
        for v in todo:
            for g in gb.basis:
                if g.degree(v) >= 2 and set(g.support()) <= kset | {v}:
                    u = g.substitute(pt)
                    if not u:
                        continue
                    out = []
                    for iv in isolate_roots(u.with_context((v,))):
                        r = exact_root(iv)
                        val = Interval.point(r) if r is not None else as_interval(refine(iv, width))
                        rest = [t for t in todo if t != v]
                        out.extend(_back(gb, dict(known, **{v: val}), rest, width))
                    return out
    raise NonTriangularError("; ".join(reasons) or f"no element determines {todo} from {sorted(known)}")


# -- certification ------------------------------------------------------------------
@dataclass
class Certificate:
    verified: bool
    box: dict
    residual_bound: Fraction
    method: str
    reason: str = ""


def residual_bound(F: Sequence[MultiPoly], box: Mapping[str, Interval]) -> tuple[bool, Fraction]:
    """Whether every equation's enclosure contains 0, and the largest magnitude."""
    ok, worst = True, Fraction(0)
    for f in F:
        iv = eval_interval(f, box)
        ok = ok and iv.contains_zero()
        worst = max(worst, iv.mag)
    return ok, worst


def certify(F: Sequence[MultiPoly], variables: Sequence[str], box: Mapping[str, Interval],
            width=DEFAULT_WIDTH, J=None) -> Certificate:
    """Exact check for point boxes, otherwise a Krawczyk test on inflated boxes."""
    variables = list(variables)
    box = {v: box[v] for v in variables}
    width = to_rational(width)
    if all(iv.width == 0 for iv in box.values()):
        pt = {v: iv.lo for v, iv in box.items()}
        vals = [f.evaluate(pt) for f in F]
        worst = max((abs(x) for x in vals), default=Fraction(0))
        return Certificate(worst == 0, box, worst, "exact", "" if worst == 0 else "nonzero residual")
    J = J or jacobian(F, variables)
    base = max(max(iv.width for iv in box.values()), width)
    radius = base
    result = None
    for _ in range(8):
        X = {v: iv.inflate(radius + abs(iv.mid) * Fraction(1, 2 ** 120)) for v, iv in box.items()}
        result = krawczyk(F, variables, X, J)
        if result.ok:
            break
        radius *= 2 ** 12
    if result is None or not result.ok:
        return Certificate(False, box, residual_bound(F, box)[1], "krawczyk",
                           result.reason if result else "no attempt")
    K = result.contracted
    # contract further towards the requested width
    for _ in range(60):
        if max(iv.width for iv in K.values()) <= width:
            break
        nxt = krawczyk(F, variables, K, J)
        if not nxt.ok:
            break
        if all(nxt.contracted[v] == K[v] for v in variables):
            break
        K = nxt.contracted
    ok, worst = residual_bound(F, K)
    return Certificate(ok, K, worst, "krawczyk", "" if ok else "residual enclosure misses 0")


# -- elimination driver -------------------------------------------------------------
@dataclass
class Candidate:
    box: dict
    source: str  # "linear", "branch" or "matching"
    root: IsolatingInterval | None = None


@dataclass
class EliminationResult:
    gb: GroebnerBasis
    eliminant: MultiPoly | None
    variable: str
    roots: list
    candidates: list
    zero_dimensional: bool
    nonpositive_roots: int = 0
    fallback: str | None = None


def normalized_equations(equations: Sequence[MultiPoly], normalization: Mapping[str, object],
                         variables: Sequence[str]) -> list[MultiPoly]:
    """Substitute pinned scales and move to the free variables."""
    out = []
    for e in equations:
        pins = {k: v for k, v in normalization.items() if k in e.variables}
        if pins:
            e = e.substitute(pins)
        out.append(e.with_context(tuple(variables)))
    return out


def eliminate(equations: Sequence[MultiPoly], variables: Sequence[str], saturation: MultiPoly,
              width=DEFAULT_WIDTH, upper=None, fallback: bool = False) -> EliminationResult:
    """Lex elimination of the saturated ideal with ``variables[-1]`` kept last.

    Positive roots of the eliminant (up to ``upper``) are refined and pushed
    through back substitution; if the basis is not triangular enough, the
    per-variable eliminants are combined by box matching instead.
    """
    variables = tuple(variables)
    ideal = saturate(Ideal(list(equations), variables), saturation.with_context(variables))
    gb = buchberger(ideal, order="lex")
    last = variables[-1]
    zero_dim = not gb.is_unit() and standard_monomials(gb) is not None
    u = elimination_polynomial(gb, last)
    if u is None or not zero_dim:
        return EliminationResult(gb, u, last, [], [], zero_dim and u is not None)
    uu = u.with_context((last,))
    roots = isolate_roots(uu, 0, upper)
    pos = [iv for iv in roots if iv.low >= 0]
    res = EliminationResult(gb, u, last, [], [], True, len(isolate_roots(uu)) - len(pos))
    for iv in pos:
        r = exact_root(iv)
        fine = iv if r is not None else refine(iv, width)
        res.roots.append((fine, r))
    if not fallback:
        try:
            for fine, r in res.roots:
                pin = Interval.point(r) if r is not None else as_interval(fine)
                for box in back_substitute(gb, {last: pin}, variables, width):
                    res.candidates.append(Candidate(box, "linear", fine))
            return res
        except NonTriangularError as exc:
            res.candidates.clear()
            res.fallback = str(exc)
    else:
        res.fallback = "requested"
    res.candidates = match_boxes(gb, variables, width)
    return res


def per_variable_roots(gb: GroebnerBasis, variables: Sequence[str], width=DEFAULT_WIDTH) -> dict:
    """Positive roots of the eliminant of each variable (minimal polynomial route)."""
    out = {}
    for v in variables:
        m = minimal_polynomial(gb, v).with_context((v,))
        ivs = []
        for iv in isolate_roots(m, 0, None):
            r = exact_root(iv)
            ivs.append(Interval.point(r) if r is not None else as_interval(refine(iv, width)))
        out[v] = ivs
    return out


def match_boxes(gb: GroebnerBasis, variables: Sequence[str], width=DEFAULT_WIDTH) -> list[Candidate]:
    """Products of per-variable root intervals whose residual enclosure contains 0."""
    roots = per_variable_roots(gb, variables, width)
    eqs = [g for g in gb.basis if set(g.support()) <= set(variables)]
    out = []
    for combo in product(*(roots[v] for v in variables)):
        box = dict(zip(variables, combo))
        inflated = {v: iv.inflate(width) for v, iv in box.items()}
        if all(eval_interval(g, inflated).contains_zero() for g in eqs):
            out.append(Candidate(box, "matching"))
    return out
