"""Case runs, classification, the V5 inventory and parameter sweeps."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..catalog import CaseRecord, get_case, paper_polynomial, paper_value
from ..groebner import Ideal, buchberger, elimination_polynomial, normal_form, saturate
from ..polycore import MultiPoly, decimal_str, equal_up_to_scalar, rational_str, to_rational
from ..realroots import isolate_roots, positivity_certificate, refine, sturm_count
from .intervals import Interval
from .solve import DEFAULT_WIDTH, SolutionRecord, certify, eliminate, normalized_equations, simplest_rational


@dataclass
class RunOptions:
    width: Fraction = DEFAULT_WIDTH
    saturation: str = "J"  # Stiefel cases: "I" keeps x13 = 1, "J" removes it
    order: Sequence[str] | None = None  # lex order of the free variables, kept variable last
    fallback: bool = False  # force per-variable eliminants with box matching
    templates: bool = True


@dataclass
class CaseRun:
    case: CaseRecord
    records: list
    eliminant: MultiPoly | None = None
    eliminant_variable: str | None = None
    order: tuple = ()
    scope: str = "complete"  # or "existence only"
    nonpositive_roots: int = 0
    window_hits: dict = field(default_factory=dict)
    fallback: str | None = None

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    def by_class(self, label: str) -> list:
        return [r for r in self.records if r.classification == label]

    @property
    def all_verified(self) -> bool:
        return all(r.verified for r in self.records)

    def to_json_dict(self, digits: int = 30) -> dict:
        return {
            "case": self.case.id,
            "parameters": {k: rational_str(Fraction(v)) for k, v in self.case.parameters.items()},
            "order": list(self.order),
            "scope": self.scope,
            "eliminant_variable": self.eliminant_variable,
            "eliminant_degree": self.eliminant.degree(self.eliminant_variable) if self.eliminant else None,
            "nonpositive_roots": self.nonpositive_roots,
            "windows": self.window_hits,
            "fallback": self.fallback,
            "records": [r.to_json_dict(digits) for r in self.records],
        }


# -- system assembly ----------------------------------------------------------------
def free_variables(case: CaseRecord) -> tuple:
    return tuple(v for v in case.variables if v not in case.normalization)


def case_equations(case: CaseRecord) -> tuple[list[MultiPoly], tuple]:
    V = free_variables(case)
    return normalized_equations(case.system().equations, case.normalization, V), V


def saturation_polynomial(case: CaseRecord, kind: str, V: Sequence[str]) -> MultiPoly:
    if case.saturation:
        f = case.saturation_factor(kind)
        return f.substitute({k: v for k, v in case.normalization.items() if k in f.variables}).with_context(V)
    f = MultiPoly.constant(1, V)
    for v in V:
        f = f * MultiPoly.variable(v, V)
    return f


# -- exact quadratic roots ------------------------------------------------------------
def quadratic_closed_form(poly: MultiPoly) -> list[tuple[str, int]]:
    """Closed forms (p +- q*sqrt(d))/r of a rational quadratic's real roots, ascending."""
    c0, c1, c2 = (to_rational(c) for c in poly.to_dense())
    den = math.lcm(c0.denominator, c1.denominator, c2.denominator)
    a, b, c = int(c2 * den), int(c1 * den), int(c0 * den)
    D = b * b - 4 * a * c
    if D < 0:
        return []
    s, d = 1, D
    k = 2
    while k * k <= d:
        while d % (k * k) == 0:
            d //= k * k
            s *= k
        k += 1
    p, q, r = -b, s, 2 * a
    if r < 0:
        p, q, r = -p, q, -r
    g = math.gcd(math.gcd(p, q), r)
    p, q, r = p // g, q // g, r // g
    if d == 1:
        return [(rational_str(Fraction(p - q, r)), -1), (rational_str(Fraction(p + q, r)), 1)]
    root = f"sqrt({d})" if q == 1 else f"{q}*sqrt({d})"
    out = []
    for sgn, op in ((-1, "-"), (1, "+")):
        body = f"{p} {op} {root}" if p else (root if sgn > 0 else f"-{root}")
        out.append((f"({body})/{r}" if r != 1 else body, sgn))
    return out


def quadratic_root_interval(poly: MultiPoly, sign: int, width=DEFAULT_WIDTH) -> Interval:
    """Enclosure of (-b + sign*sqrt(D))/(2a) from integer square roots, of at most ``width``."""
    c0, c1, c2 = (to_rational(c) for c in poly.to_dense())
    D = c1 * c1 - 4 * c2 * c0
    if D < 0:
        raise ValueError("no real roots")
    width = to_rational(width)
    scale = abs(1 / (2 * c2))
    M = 1
    while Fraction(1, M) * scale > width:
        M *= 2
    num = D.numerator * D.denominator * M * M  # sqrt(D) = sqrt(num)/(M*den)
    lo_s = Fraction(math.isqrt(num), M * D.denominator)
    hi_s = lo_s if math.isqrt(num) ** 2 == num else Fraction(math.isqrt(num) + 1, M * D.denominator)
    e1 = (-c1 + sign * lo_s) / (2 * c2)
    e2 = (-c1 + sign * hi_s) / (2 * c2)
    return Interval(min(e1, e2), max(e1, e2))


# -- templates --------------------------------------------------------------------------
def template_membership(case: CaseRecord, template, equations=None) -> list:
    """Normal forms of the system equations modulo the template ideal (all zero when it holds)."""
    if equations is None:
        equations, V = case_equations(case)
    else:
        V = equations[0].variables
    gens = template.ideal_generators(V, "lex")
    basis = buchberger(gens, order="lex").basis
    return [normal_form(e.with_context(V, "lex"), basis) for e in equations]


def template_records(case: CaseRecord, options: RunOptions) -> list[SolutionRecord]:
    equations, V = case_equations(case)
    out = []
    for t in case.known_solutions:
        if t.defining is None:
            continue
        residues = template_membership(case, t, equations)
        member = all(not r for r in residues)
        free = t.defining.univariate_variable()
        q = t.defining.with_context((free,))
        forms = quadratic_closed_form(q) if q.degree(free) == 2 else []
        for iv in isolate_roots(q, 0, None):
            if forms:
                sign, x = next((sg, ex) for sg in (-1, 1)
                               for ex in [quadratic_root_interval(q, sg, options.width)]
                               if iv.low < ex.hi and ex.lo <= iv.high)
                text = dict((s, f) for f, s in forms)[sign]
            else:
                fine = refine(iv, options.width)
                x, text = Interval(fine.low, fine.high), None
            box = {free: x}
            for var, val in t.bindings.items():
                if val.is_constant():
                    box[var] = Interval.point(val.constant_term())
                elif val.support() == (free,) and val == MultiPoly.variable(free, val.variables, val.order):
                    box[var] = x
                else:
                    raise ValueError(f"template binding {var} = {val} is not supported")
            exact = {v: text for v, iv2 in box.items() if iv2 is x and text}
            out.append(SolutionRecord(case.id, dict(case.parameters), {v: box[v] for v in V},
                                      t.description if member else "unverified", Fraction(0), member,
                                      "ideal-membership",
                                      {"template": t.description, "defining": str(t.defining)}, exact))
    return out


# -- classification -------------------------------------------------------------------
def classify(record: SolutionRecord, case: CaseRecord) -> str:
    if "template" in record.provenance:
        return record.classification
    if not record.verified:
        return "unverified"
    kt = case.kahler_template
    if kt:
        pt = {v: record.box[v] for v in record.box}
        if all(v in case.normalization or (pt[v].width == 0 and pt[v].lo == to_rational(kt[v])) for v in kt):
            return "kahler"
    if case.family.startswith("stiefel") and record.box["x13"].contains(1):
        return "unverified"
    return "new"


def _window_label(case: CaseRecord, box: dict):
    for w in case.windows:
        iv = box.get(w["variable"])
        if iv is not None and w["low"] < iv.lo and iv.hi < w["high"]:
            return w["label"]
    return None


def _exact_point(F, V, box):
    """Upgrade a certified box to an exact rational point when one solves the system."""
    pt = {v: simplest_rational(box[v].lo, box[v].hi) for v in V}
    if all(pt[v].denominator < 10 ** 12 for v in V) and all(f.evaluate(pt) == 0 for f in F):
        return {v: Interval.point(pt[v]) for v in V}
    return None


def run_case(case_id: str, params: dict | None = None, options: RunOptions | None = None) -> CaseRun:
    """All positive solutions of a case at fixed parameters, certified and classified."""
    options = options or RunOptions()
    case = get_case(case_id, **(params or {}))
    F, V = case_equations(case)
    if options.order:
        if set(options.order) != set(V):
            raise ValueError(f"order must be a permutation of {V}")
        V = tuple(options.order)
        F = [f.with_context(V) for f in F]
    elif "h1" in case.orders or "p1" in case.orders:
        V = tuple(case.orders.get("h1") or case.orders["p1"])
        F = [f.with_context(V) for f in F]
    sat = saturation_polynomial(case, options.saturation, V)
    res = eliminate(F, V, sat, options.width, fallback=options.fallback)
    run = CaseRun(case, [], res.eliminant, res.variable, ("z",) + V,
                  "complete" if res.zero_dimensional else "existence only", res.nonpositive_roots,
                  fallback=res.fallback)
    records = []
    for cand in res.candidates:
        box = cand.box
        if any(box[v].hi <= 0 for v in V):
            continue
        cert = certify(F, V, box, options.width)
        final = cert.box
        certificate = cert.method
        if cert.verified and cert.method != "exact":
            pt = _exact_point(F, V, final)
            if pt is not None:
                final, certificate = pt, "exact"
        if cert.verified and any(final[v].lo <= 0 for v in V):
            continue
        prov = {"order": " > ".join(("z",) + V), "eliminant": f"{res.variable}-eliminant degree "
                f"{res.eliminant.degree(res.variable)}", "substitution": cand.source}
        rec = SolutionRecord(case.id, dict(case.parameters), final, "unverified", cert.residual_bound,
                             cert.verified, certificate, prov)
        if not cert.verified:
            rec.notes.append(cert.reason)
        w = _window_label(case, final)
        if w:
            rec.provenance["window"] = w
        rec.classification = classify(rec, case)
        for t in case.known_solutions:
            if t.defining is None and all(
                    final[v].width == 0 and val.is_constant() and final[v].lo == val.constant_term()
                    for v, val in t.bindings.items()):
                rec.provenance["template"] = t.description
        if final.get(V[0]) is not None and case.family == "flag-q2" and final["x2"].contains(1):
            rec.notes.append("coincides with x1 = 1 (normal metric)")
        records.append(rec)
    if options.templates:
        records = template_records(case, options) + records
    canon = free_variables(case)
    records.sort(key=lambda r: (r.classification != "jensen", r.classification != "kahler",
                                [r.box[v].lo for v in canon]))
    run.records = records
    for w in case.windows:
        run.window_hits[w["label"]] = sum(1 for r in records if r.provenance.get("window") == w["label"])
    return run


# -- V5 inventory ---------------------------------------------------------------------
PATTERN_KEYS = ("s12", "s13", "s23", "s33", "s14", "s24", "s34")


def frame_pattern(record: SolutionRecord, case: CaseRecord) -> dict:
    """Scales on the common block refinement 1 + 1 + 3 + (n-5) of both ansatzes."""
    b = dict(record.box)
    for k, v in case.normalization.items():
        b[k] = Interval.point(v)
    if case.family == "stiefel-metric7":
        vals = (b["x12"], b["x12"], b["x2"], b["x2"], b["x13"], b["x23"], b["x23"])
    elif case.family == "stiefel-metric6":
        vals = (b["x1"], b["x12"], b["x12"], b["x2"], b["x13"], b["x13"], b["x23"])
    else:
        raise ValueError(f"{case.id} is not a V5 ansatz")
    return dict(zip(PATTERN_KEYS, vals))


def same_pattern(p: dict, q: dict) -> bool:
    return all(p[k].intersects(q[k]) for k in PATTERN_KEYS)


@dataclass
class Inventory:
    n: int
    metrics: list  # (pattern, [records])
    runs: list

    @property
    def distinct(self) -> int:
        return len(self.metrics)

    @property
    def all_verified(self) -> bool:
        return all(r.verified for _, recs in self.metrics for r in recs)

    def pairwise_disjoint(self) -> bool:
        pats = [p for p, _ in self.metrics]
        return all(not same_pattern(pats[i], pats[j]) for i in range(len(pats)) for j in range(i + 1, len(pats)))

    def to_json_dict(self, digits: int = 25) -> dict:
        out = []
        for pat, recs in self.metrics:
            out.append({"pattern": {k: decimal_str(iv.mid, digits) for k, iv in pat.items()},
                        "sources": [f"{r.case_id}:{r.classification}" for r in recs],
                        "verified": all(r.verified for r in recs)})
        return {"n": self.n, "distinct": self.distinct, "pairwise_disjoint": self.pairwise_disjoint(),
                "all_verified": self.all_verified, "metrics": out}


def v5_inventory(n: int = 7, options: RunOptions | None = None) -> Inventory:
    """Distinct certified Einstein metrics on V5(R^n) from both ansatzes and the Jensen templates."""
    runs = [run_case("stiefel-metric7", {"n": n}, options), run_case("stiefel-metric6", {"n": n}, options)]
    metrics: list = []
    for run in runs:
        for r in run.records:
            if not r.verified:
                continue
            pat = frame_pattern(r, run.case)
            for entry in metrics:
                if same_pattern(entry[0], pat):
                    entry[1].append(r)
                    break
            else:
                metrics.append((pat, [r]))
    return Inventory(n, metrics, runs)


def case_eliminant(case: CaseRecord, saturation: str = "J", order: Sequence[str] | None = None) -> MultiPoly:
    """Lex eliminant of the saturated ideal in the last variable of ``order``."""
    F, V = case_equations(case)
    V = tuple(order or case.orders.get("h1") or case.orders.get("p1") or V)
    F = [f.with_context(V) for f in F]
    ideal = saturate(Ideal(F, V), saturation_polynomial(case, saturation, V))
    gb = buchberger(ideal, order="lex")
    u = elimination_polynomial(gb, V[-1])
    if u is None:
        raise ValueError(f"{case.id}: no eliminant in {V[-1]}")
    return u.with_context((V[-1],))


def flag_q2_symbolic() -> dict:
    """Root set of the two-summand equation over Q(d1, d2).

    With x1 = 1, x2*(r1 - r2) is a quadratic in x2; both known values must
    annihilate r1 - r2 and differ, so they are all the roots.
    """
    from ..homspace import IsotropyDecomposition, ricci_components, symbolic_dims
    d1, d2 = symbolic_dims("d1", "d2")
    d = IsotropyDecomposition([d1, d2], {(1, 0, 0): d1 * d2 / (d1 + 4 * d2)}, variables=("x1", "x2"))
    r1, r2 = ricci_components(d, check=False)
    diff = (r1 - r2).substitute_values({"x1": 1})
    exps = sorted(e[1] for e in diff.terms)
    lead = diff.terms[(0, exps[-1])]
    roots = {"kahler": d1 * 0 + 2, "non-kahler": 4 * d2 / (d1 + 2 * d2)}
    residuals = {k: (r1 - r2).evaluate_generic({"x1": d1 * 0 + 1, "x2": v}) for k, v in roots.items()}
    return {
        "degree": exps[-1] - exps[0],
        "leading_nonzero": bool(lead),
        "residuals_zero": all(not v for v in residuals.values()),
        "distinct": bool(roots["kahler"] - roots["non-kahler"]),
        "roots": {k: str(v) for k, v in roots.items()},
    }


# -- sweeps -----------------------------------------------------------------------------
@dataclass
class SweepOptions:
    solve: bool = True
    timings: bool = False
    workers: int = 1
    params: dict = field(default_factory=dict)  # fixed extra parameters
    width: Fraction = DEFAULT_WIDTH


@dataclass
class SweepReport:
    case_id: str
    n_range: tuple
    rows: list

    @property
    def ok(self) -> bool:
        return all(r.get("ok", False) for r in self.rows)

    def to_json(self) -> str:
        return json.dumps({"case": self.case_id, "n_range": list(self.n_range), "ok": self.ok,
                           "rows": self.rows}, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        keys = sorted({k for r in self.rows for k in r})
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in self.rows:
            w.writerow({k: json.dumps(r[k], sort_keys=True) if isinstance(r.get(k), (dict, list)) else r.get(k, "")
                        for k in keys})
        return buf.getvalue()


def metric7_signs(n: int) -> dict:
    h1 = paper_polynomial("h1", n)
    h1v = {k: h1.evaluate({"x13": k}) for k in (0, 1, 2)}
    printed = {k: paper_value(f"h1_at_{k}", n) for k in (0, 1, 2)}
    return {
        "h1(0)>0": h1v[0] > 0 and printed[0] > 0,
        "h1(1)<0": h1v[1] < 0 and printed[1] < 0,
        "h1(2)>0": h1v[2] > 0 and printed[2] > 0,
        "h1 values match printed": all(h1v[k] == printed[k] for k in (0, 1, 2)),
        "h2 positivity": positivity_certificate(paper_polynomial("h2", n)),
        "h3 positivity": positivity_certificate(paper_polynomial("h3", n)),
        "a(n)>0": paper_value("a", n) > 0,
    }


def metric6_signs(n: int) -> dict:
    return {"p1(1)<0": paper_value("p1_at_1", n, "factored") < 0}


def _window_counts(poly: MultiPoly, case: CaseRecord) -> dict:
    out = {}
    for w in case.windows:
        lo, hi = w["low"], w["high"]
        if poly.evaluate({w["variable"]: lo}) == 0 or poly.evaluate({w["variable"]: hi}) == 0:
            out[w["label"]] = "endpoint root"
        else:
            out[w["label"]] = sturm_count(poly, lo, hi)
    return out


def _row(case_id: str, value: int, opts: SweepOptions) -> dict:
    t0 = time.perf_counter()
    row: dict = {"n": value}
    try:
        if case_id == "stiefel-metric7":
            case = get_case(case_id, n=value)
            row["signs"] = metric7_signs(value)
            h1 = paper_polynomial("h1", value)
            row["windows"] = _window_counts(h1, case)
            ok = all(row["signs"].values()) and all(c == 1 for c in row["windows"].values())
            if opts.solve:
                u = case_eliminant(case, "I")
                x = MultiPoly.variable("x13", ("x13",))
                row["eliminant = (x13-1)*h1"] = equal_up_to_scalar(u, (x - 1) * h1) is not None
                run = run_case(case_id, {"n": value}, RunOptions(width=opts.width))
                row["non-jensen"] = len(run.by_class("new"))
                row["jensen"] = len(run.by_class("jensen"))
                row["verified"] = run.all_verified
                ok = ok and row["eliminant = (x13-1)*h1"] and row["non-jensen"] == 2 and row["verified"]
        elif case_id == "stiefel-metric6":
            case = get_case(case_id, n=value)
            row["signs"] = metric6_signs(value)
            ok = all(row["signs"].values())
            if opts.solve:
                run = run_case(case_id, {"n": value}, RunOptions(width=opts.width))
                u = run.eliminant.with_context(("x13",))
                row["p1 degree"] = u.degree("x13")
                row["windows"] = _window_counts(u, case)
                row["non-jensen"] = len(run.by_class("new"))
                row["verified"] = run.all_verified
                ok = ok and row["p1 degree"] == 22 and all(c == 1 for c in row["windows"].values()) \
                    and row["verified"]
        elif case_id == "flag-q2":
            params = {"d1": value, "d2": value, **opts.params}
            run = run_case(case_id, params, RunOptions(width=opts.width))
            row["parameters"] = {k: str(v) for k, v in params.items()}
            row["solutions"] = len(run.records)
            row["verified"] = run.all_verified
            ok = row["solutions"] == 2 and row["verified"]
        else:
            params = {"n": value, **opts.params}
            run = run_case(case_id, params, RunOptions(width=opts.width))
            row["solutions"] = len(run.records)
            row["classes"] = {c: len(run.by_class(c)) for c in ("jensen", "kahler", "new", "unverified")}
            row["verified"] = run.all_verified
            ok = row["verified"]
        row["ok"] = bool(ok)
    except Exception as exc:  # recorded per row, the sweep continues
        row["ok"] = False
        row["error"] = f"{type(exc).__name__}: {exc}"
    if opts.timings:
        row["seconds"] = round(time.perf_counter() - t0, 3)
    return row


def _row_task(args):
    return _row(*args)


def sweep(case_id: str, n_from: int, n_to: int, options: SweepOptions | None = None) -> SweepReport:
    """Per-n checks over [n_from, n_to]; rows come back in n order whatever the worker count."""
    opts = options or SweepOptions()
    values = list(range(n_from, n_to + 1))
    tasks = [(case_id, v, opts) for v in values]
    if opts.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=opts.workers) as pool:
            rows = list(pool.map(_row_task, tasks))
    else:
        rows = [_row_task(t) for t in tasks]
    return SweepReport(case_id, (n_from, n_to), rows)


def run_summary(run: CaseRun) -> str:
    lines = [f"{run.case.id} {', '.join(f'{k}={v}' for k, v in run.case.parameters.items())}: "
             f"{len(run.records)} positive solution(s), scope {run.scope}"]
    for r in run.records:
        vals = ", ".join(f"{v}={rational_str(iv.lo) if iv.width == 0 else decimal_str(iv.mid, 20)}"
                         for v, iv in r.box.items())
        lines.append(f"  [{r.classification}] {vals}  ({r.certificate}, verified={r.verified})")
    return "\n".join(lines)


__all__ = [
    "RunOptions", "CaseRun", "run_case", "classify", "template_records", "template_membership",
    "quadratic_closed_form", "quadratic_root_interval", "v5_inventory", "Inventory", "frame_pattern",
    "same_pattern", "SweepOptions", "SweepReport", "sweep", "metric7_signs", "metric6_signs",
    "run_summary", "flag_q2_symbolic", "case_equations", "case_eliminant", "free_variables", "saturation_polynomial",
]
