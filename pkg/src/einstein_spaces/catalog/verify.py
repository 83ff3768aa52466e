"""Cross-checks between transcribed fixtures and systems rebuilt from bracket data."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from ..groebner import divide
from ..homspace import cleared_difference
from ..polycore import LaurentPoly, MultiPoly, equal_up_to_scalar, parse_poly
from .registry import CaseRecord, get_case, paper_polynomial, paper_value


@dataclass
class Check:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, **{k: _s(v) for k, v in self.detail.items()}}


def _s(v):
    if isinstance(v, (list, tuple)):
        return [_s(x) for x in v]
    if isinstance(v, dict):
        return {k: _s(x) for k, x in v.items()}
    if v is None or isinstance(v, (bool, int, str)):
        return v
    return str(v)


@dataclass
class TranscriptionReport:
    case_id: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)  # expected discrepancies

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json_dict(self) -> dict:
        return {"case": self.case_id, "ok": self.ok,
                "checks": [c.to_json_dict() for c in self.checks],
                "notes": [c.to_json_dict() for c in self.notes]}


def first_difference(a: MultiPoly, b: MultiPoly, scalar=None) -> str | None:
    """Describe the leading monomial where a and scalar*b disagree."""
    if scalar is None:
        if not b:
            scalar = Fraction(1)
        else:
            e = b.leading_monomial
            scalar = a.terms.get(e, Fraction(0)) / b.terms[e] if a.terms.get(e) else Fraction(1)
    diff = a - b * scalar
    if not diff:
        return None
    e = diff.leading_monomial
    mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(a.variables, e) if k) or "1"
    return f"{mono}: {a.terms.get(e, 0)} vs {scalar}*({b.terms.get(e, 0)})"


def laurent_differences(printed: LaurentPoly, built: LaurentPoly) -> list[tuple]:
    """Terms (monomial, printed coefficient, built coefficient) that disagree."""
    out = []
    V = printed.variables
    for e in sorted(set(printed.terms) | set(built.terms)):
        a, b = printed.terms.get(e, 0), built.terms.get(e, 0)
        if a != b:
            mono = "*".join(f"{v}^{k}" if k != 1 else v for v, k in zip(V, e) if k)
            out.append((mono, a, b))
    return out


def _match_equation(rec: CaseRecord, name: str, printed: MultiPoly, declared, rs, index) -> Check:
    """Try the declared pair first, then every other pair of components."""
    keep = rec.variables
    order = printed.order
    candidates = [declared] + [p for p in permutations(range(len(rs)), 2) if p != declared]
    first = None
    for i, j in candidates:
        _, prim = cleared_difference(rs[i], rs[j], rec.normalization, keep, order)
        if not prim:
            continue
        c = equal_up_to_scalar(printed, prim)
        if first is None:
            first = first_difference(printed, prim)
        if c is not None:
            pair = (rec.decomposition.variables[i], rec.decomposition.variables[j])
            return Check(name, True, {"pair": pair, "declared": (i, j) == declared, "scalar": c})
    dv = rec.decomposition.variables
    return Check(name, False, {"declared_pair": (dv[declared[0]], dv[declared[1]]),
                               "first_difference": first})


def verify_transcription(case_id: str, **params) -> TranscriptionReport:
    """Compare every printed object of a case with its recomputation."""
    rec = get_case(case_id, **params)
    rep = TranscriptionReport(case_id)
    if rec.family in ("stiefel-metric7", "stiefel-metric6"):
        _verify_stiefel(rec, rep)
    elif rec.family == "flag-Sp-B2b":
        _verify_sp(rec, rep)
    elif rec.family in ("flag-q2", "flag-q3-A1(3)"):
        rs = rec.ricci()
        for var, r in zip(rec.decomposition.variables, rs):
            diffs = laurent_differences(rec.printed_ricci[var], r)
            rep.checks.append(Check(f"ricci {var}", not diffs, {"differences": diffs}))
    return rep


def _verify_stiefel(rec: CaseRecord, rep: TranscriptionReport) -> None:
    rs = rec.ricci()
    dv = rec.decomposition.variables
    closed = rec.closed_form_ricci()
    for var, r in zip(dv, rs):
        diffs = laurent_differences(closed[var], r)
        rep.checks.append(Check(f"closed form {var}", not diffs, {"differences": diffs}))
    names = list(rec.printed_system)
    for idx, name in enumerate(names):
        a, b = rec.pairing[idx]
        declared = (dv.index(a), dv.index(b))
        rep.checks.append(_match_equation(rec, name, rec.printed_system[name], declared, rs, idx))
    # printed component display: differences are expected and reported, not failures
    for var, printed in rec.printed_ricci.items():
        diffs = laurent_differences(printed, closed[var])
        if diffs:
            rep.notes.append(Check(f"printed component {var}", False, {"differences": diffs}))


def _verify_sp(rec: CaseRecord, rep: TranscriptionReport) -> None:
    f = rec.raw["expected_factor"]
    eq = rec.printed_system[f["equation"]]
    factor = parse_poly(f["factor"], rec.variables)
    q, r = divide(eq, [factor])
    rep.checks.append(Check(f"factor {f['factor']} of {f['equation']}", not r,
                            {"cofactor_terms": len(q[0].terms)}))


def printed_form_agreement(fid: str, n0) -> dict:
    """For fixtures printed twice, whether the forms agree at n0."""
    from .registry import polynomial_forms
    forms = polynomial_forms(fid)
    if len(forms) < 2:
        return {}
    ref = paper_polynomial(fid, n0) if fid.startswith("h") and "_" not in fid else None
    out = {}
    for form in forms:
        if ref is not None:
            out[form] = paper_polynomial(fid, n0, form) == ref
        else:
            out[form] = paper_value(fid, n0, form) == paper_value(fid, n0)
    return out
