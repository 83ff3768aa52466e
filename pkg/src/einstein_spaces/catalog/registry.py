"""Case registry backed by the JSON files in ``data/``.

Cases are specialized on request: ``get_case("stiefel-metric7", n=7)`` gives
integer-coefficient systems, ``get_case("stiefel-metric7")`` keeps n symbolic
(coefficients in Q(n)).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Mapping

from ..homspace import (IsotropyDecomposition, einstein_system, ricci_components, solve_brackets,
                        stiefel_decomposition, wallach_decomposition)
from ..homspace.ricci import EinsteinSystem
from ..polycore import (LaurentPoly, MultiPoly, ParamCoefficient, ParamPoly, parse_laurent,
                        parse_poly, specialize_coefficient)

FORMAT_VERSION = 1


class UnknownCaseError(KeyError):
    pass


class ParameterError(ValueError):
    pass


@lru_cache(maxsize=None)
def _load(name: str) -> dict:
    text = resources.files(__package__).joinpath("data", name).read_text()
    data = json.loads(text)
    if data.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"{name}: unsupported format version {data.get('format_version')}")
    return data


def _cases() -> dict:
    return {c["id"]: c for c in _load("cases.json")["cases"]}


def list_cases() -> list[dict]:
    return [{"id": c["id"], "family": c["family"], "description": c["description"],
             "parameters": sorted(c["parameters"])} for c in _load("cases.json")["cases"]]


def expr_value(text: str, values: Mapping[str, object] | None = None, param: str = "n"):
    """Evaluate a constant expression; free ``param`` becomes the Q(n) generator."""
    return parse_poly(text, (), values=values, param=param).constant_term()


@dataclass
class SolutionTemplate:
    description: str
    bindings: dict
    defining: MultiPoly | None = None  # univariate polynomial fixing the free variable
    closed_form: str | None = None

    def ideal_generators(self, variables, order="lex") -> list[MultiPoly]:
        """x - value for each binding plus the defining polynomial."""
        gens = []
        for var, val in self.bindings.items():
            gens.append(MultiPoly.variable(var, variables, order) - val.with_context(variables, order))
        if self.defining is not None:
            gens.append(self.defining.with_context(variables, order))
        return gens


@dataclass
class CaseRecord:
    id: str
    family: str
    description: str
    parameters: dict
    decomposition: IsotropyDecomposition | None
    variables: tuple
    normalization: dict
    pairing: list
    printed_system: dict = field(default_factory=dict)
    printed_ricci: dict = field(default_factory=dict)
    known_solutions: list = field(default_factory=list)
    windows: list = field(default_factory=list)
    saturation: dict = field(default_factory=dict)
    orders: dict = field(default_factory=dict)
    claims: dict = field(default_factory=dict)
    kahler_template: dict | None = None
    raw: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.parameters.get("n")

    def ricci(self) -> list[LaurentPoly]:
        if self.decomposition is None:
            raise ValueError(f"{self.id} carries no decomposition")
        return ricci_components(self.decomposition)

    def system(self, pairing=None, order="lex") -> EinsteinSystem:
        """Cleared Einstein equations built from the decomposition."""
        if self.decomposition is None:
            return EinsteinSystem(list(self.printed_system.values()), self.variables,
                                  self.normalization, [], {"case": self.id, "source": "printed"})
        return einstein_system(self.decomposition, self.normalization, pairing or self.pairing, order,
                               {"case": self.id, **{k: str(v) for k, v in self.parameters.items()}})

    def closed_form_ricci(self) -> dict:
        """Closed-form Ricci components (Stiefel cases only), keyed by variable."""
        tname = self.raw.get("template")
        if not tname:
            raise ValueError(f"{self.id} has no closed-form template")
        ks = _blocks(self.raw["blocks"], self.parameters)
        return ricci_template(tname, ks)

    def saturation_factor(self, kind: str = "J") -> MultiPoly:
        return parse_poly(self.raw["saturation"][kind], self.variables)


def _blocks(texts, params) -> list:
    return [expr_value(t, params) for t in texts]


def _as_param(v):
    if isinstance(v, ParamPoly):
        return ParamCoefficient(v)
    return v


def ricci_template(name: str, ks) -> dict:
    """Closed-form Ricci components for block sizes ``ks`` = (k1, k2, k3).

    For the four-summand template k1 must be 1. Any k may be symbolic in n.
    """
    tpl = _load("cases.json")["ricci_templates"][name]
    k1, k2, k3 = (_as_param(k) for k in ks)
    N = k1 + k2 + k3
    values = {"k1": k1, "k2": k2, "k3": k3}
    if not isinstance(N, ParamCoefficient):
        values["n"] = N
    elif N != ParamCoefficient.gen():
        raise ParameterError("symbolic block sizes must add up to n")
    V = tuple(tpl["variables"])
    return {v: parse_laurent(s, V, values) for v, s in tpl["components"].items()}


def _check_params(rules: dict, params: dict, case_id: str) -> None:
    for name, rule in rules.items():
        if name not in params or params[name] is None:
            continue
        v = params[name]
        if not isinstance(v, (int, Fraction)):
            continue
        if "min" in rule and v < rule["min"]:
            raise ParameterError(f"{case_id}: {name}={v} is below the valid range (min {rule['min']})")
    unknown = set(params) - set(rules)
    if unknown:
        raise ParameterError(f"{case_id}: unknown parameters {sorted(unknown)}")


def _window(w: dict, params: dict) -> dict:
    return {"variable": w["variable"], "label": w["label"],
            "low": expr_value(w["low"], params), "high": expr_value(w["high"], params)}


def _templates(raw: dict, variables, params) -> list[SolutionTemplate]:
    out = []
    for t in raw.get("known_solutions", []):
        bindings = {k: parse_poly(v, variables, values=params) for k, v in t["bindings"].items()}
        defining = None
        if "defining" in t:
            defining = parse_poly(t["defining"]["poly"], variables, values=params)
        out.append(SolutionTemplate(t["description"], bindings, defining, t.get("closed_form")))
    return out


def get_case(case_id: str, **params) -> CaseRecord:
    """Registered case, specialized at the given parameter values."""
    cases = _cases()
    if case_id not in cases:
        raise UnknownCaseError(case_id)
    raw = cases[case_id]
    params = {k: (Fraction(v) if isinstance(v, (int, str)) else v) for k, v in params.items()}
    _check_params(raw["parameters"], params, case_id)
    builder = _BUILDERS[raw["family"]]
    return builder(raw, params)


def _stiefel(raw: dict, params: dict) -> CaseRecord:
    n0 = params.get("n")
    pv = {"n": n0} if n0 is not None else {}
    ks = _blocks(raw["blocks"], pv)
    ks = [k.num if isinstance(k, ParamCoefficient) else int(k) for k in ks]
    d = stiefel_decomposition(*ks, name=raw["id"])
    d.validity = (raw["parameters"]["n"]["min"], None)
    V = tuple(raw["variables"])
    printed = {k: parse_poly(s, V, values=pv) for k, s in raw["printed_system"].items()}
    pr = {}
    if "printed_ricci" in raw:
        PV = tuple(raw["printed_ricci"]["variables"])
        pr = {k: parse_laurent(s, PV, pv) for k, s in raw["printed_ricci"]["components"].items()}
    windows = [_window(w, pv) for w in raw.get("windows", [])] if n0 is not None else []
    return CaseRecord(raw["id"], raw["family"], raw["description"], dict(pv), d, V,
                      {k: Fraction(v) for k, v in raw["normalization"].items()},
                      [tuple(p) for p in raw["pairing"]], printed, pr, _templates(raw, V, pv), windows,
                      dict(raw.get("saturation", {})), dict(raw.get("orders", {})), dict(raw.get("claims", {})),
                      None, raw)


def _flag_q2(raw: dict, params: dict) -> CaseRecord:
    d1, d2 = params.get("d1"), params.get("d2")
    if d1 is None or d2 is None:
        raise ParameterError("flag-q2 needs d1 and d2")
    dec = raw["decomposition"]
    t = expr_value(dec["triples"][0]["value"], params)
    d = IsotropyDecomposition([d1, d2], {tuple(dec["triples"][0]["k"]): t}, dec["labels"], None,
                              raw["id"], dec["variables"])
    V = tuple(dec["variables"])
    pr_vals = dict(params, T=t)
    pr = {k: parse_laurent(s, V, pr_vals) for k, s in raw["printed_ricci"]["components"].items()}
    sols = _templates(raw, ("x2",), params)
    return CaseRecord(raw["id"], raw["family"], raw["description"], dict(params), d, ("x2",),
                      {"x1": Fraction(1)}, [tuple(p) for p in raw["pairing"]], {}, pr, sols,
                      claims={"solutions": 2},
                      kahler_template={k: Fraction(v) for k, v in raw["kahler_template"].items()}, raw=raw)


def _flag_a13(raw: dict, params: dict) -> CaseRecord:
    dims = [params.get(k) for k in ("d1", "d2", "d3")]
    if any(x is None for x in dims):
        raise ParameterError("flag-q3-A1(3) needs d1, d2, d3")
    dec = raw["decomposition"]
    keys = [tuple(t["k"]) for t in dec["triples"]]
    ke = {k: Fraction(v) for k, v in raw["kahler_template"].items()}
    if params.get("A") is None or params.get("B") is None:
        # brackets forced by the Kahler-Einstein metric being Einstein
        sol = solve_brackets(dims, {}, keys, ke, dec["variables"], dec["labels"])
        params = dict(params, A=sol[keys[0]], B=sol[keys[1]])
        source = "kahler-einstein"
    else:
        source = "free"
    triples = {keys[0]: params["A"], keys[1]: params["B"]}
    d = IsotropyDecomposition(dims, triples, dec["labels"], None, raw["id"], dec["variables"])
    V = tuple(dec["variables"])
    pr = {k: parse_laurent(s, V, params) for k, s in raw["printed_ricci"]["components"].items()}
    rec = CaseRecord(raw["id"], raw["family"], raw["description"], dict(params), d, ("x2", "x3"),
                     {"x1": Fraction(1)}, [tuple(p) for p in raw["pairing"]], {}, pr,
                     claims=dict(raw["claims"]), kahler_template=ke, raw=raw)
    rec.claims["brackets"] = source
    return rec


def _flag_sp(raw: dict, params: dict) -> CaseRecord:
    n0, p0 = params.get("n"), params.get("p")
    if n0 is None or p0 is None:
        raise ParameterError("flag-Sp-B2b needs n and p")
    if not 1 <= p0 <= n0 - 1:
        raise ParameterError(f"flag-Sp-B2b needs 1 <= p <= n-1, got p={p0}, n={n0}")
    V = tuple(raw["variables"])
    printed = {k: parse_poly(s, V, values=params) for k, s in raw["printed_system"].items()}
    return CaseRecord(raw["id"], raw["family"], raw["description"], dict(params), None, V,
                      {k: Fraction(v) for k, v in raw["normalization"].items()}, [], printed,
                      claims=dict(raw["claims"]), raw=raw)


def _wallach(raw: dict, params: dict) -> CaseRecord:
    lmn = [params.get(k) for k in ("l", "m", "n")]
    if any(x is None for x in lmn):
        raise ParameterError("wallach-SO needs l, m, n")
    d = wallach_decomposition(*lmn)
    return CaseRecord(raw["id"], raw["family"], raw["description"], dict(params), d,
                      tuple(raw["variables"]), {k: Fraction(v) for k, v in raw["normalization"].items()},
                      [tuple(p) for p in raw["pairing"]], claims=dict(raw["claims"]), raw=raw)


_BUILDERS = {
    "stiefel-metric7": _stiefel,
    "stiefel-metric6": _stiefel,
    "flag-q2": _flag_q2,
    "flag-q3-A1(3)": _flag_a13,
    "flag-Sp-B2b": _flag_sp,
    "wallach-SO": _wallach,
}


# -- printed polynomials -----------------------------------------------------------
POLYNOMIAL_IDS = ("h1", "h2", "h3", "a", "p1_at_1", "h1_at_0", "h1_at_1", "h1_at_2")


def _at(c, n0):
    if n0 is None:
        return c
    return specialize_coefficient(c, n0) if isinstance(c, ParamCoefficient) else c


def paper_value(fid: str, n0=None, form: str | None = None):
    """Printed scalar fixture (a, p1_at_1, h1_at_k) at n0, or symbolic in n."""
    vals = _load("fixtures.json")["values"]
    if fid not in vals:
        raise UnknownCaseError(fid)
    f = vals[fid]
    if fid == "a":
        coeffs = [Fraction(int(c)) for c in f["coefficients_ascending"]]
        t = (ParamCoefficient.gen() if n0 is None else Fraction(n0)) - f["shift"]
        acc = Fraction(0)
        for c in reversed(coeffs):  # Horner in (n - shift)
            acc = acc * t + c
        return acc
    text = f["forms"][form or f["reference_form"]] if "forms" in f else f["expr"]
    return _at(expr_value(text), n0)


def paper_polynomial(fid: str, n0=None, form: str | None = None) -> MultiPoly:
    """Printed polynomial fixture specialized at n0 (or over Q(n) when n0 is None).

    Scalar fixtures come back as constant polynomials without variables.
    """
    polys = _load("fixtures.json")["polynomials"]
    if fid not in polys:
        if fid in _load("fixtures.json")["values"]:
            return MultiPoly.constant(paper_value(fid, n0, form), ())
        raise UnknownCaseError(fid)
    f = polys[fid]
    coeffs = f["forms"][form or f["reference_form"]]
    dense = [Fraction(0)] * (f["degree"] + 1)
    for k, text in coeffs.items():
        dense[int(k)] = _at(expr_value(text), n0)
    return MultiPoly.from_univariate(dense, f["variable"])


def polynomial_forms(fid: str) -> list[str]:
    polys = _load("fixtures.json")["polynomials"]
    vals = _load("fixtures.json")["values"]
    f = polys.get(fid) or vals.get(fid)
    if f is None:
        raise UnknownCaseError(fid)
    return sorted(f.get("forms", {"expr": None}))


def fixture_metadata(fid: str) -> dict:
    fx = _load("fixtures.json")
    f = fx["polynomials"].get(fid) or fx["values"].get(fid) or fx["linear_relations"].get(fid)
    if f is None:
        raise UnknownCaseError(fid)
    return {k: v for k, v in f.items() if k not in ("forms", "coefficients_ascending")}


def relation_scale(var: str, n0=None):
    """Printed scale c(n) (without a(n)) of the linear relation for ``var``."""
    rel = _load("fixtures.json")["linear_relations"][var]
    return _at(expr_value(rel["scale"]), n0)
