"""Command-line interface ``spaces``.

Exit status is 0 only when every requested certificate passes.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from ..catalog import (get_case, list_cases, paper_polynomial, printed_form_agreement,
                       verify_transcription)
from ..groebner import Ideal, buchberger, saturate
from ..homspace import einstein_system
from ..homspace.ricci import EinsteinSystem
from ..polycore import MultiPoly, decimal_str, from_json_dict, parse_poly, rational_str
from ..realroots import isolate_roots, refine, root_report
from .run import RunOptions, SweepOptions, metric6_signs, metric7_signs, run_case, run_summary, sweep
from .solve import DEFAULT_WIDTH


def _params(args) -> dict:
    out = {}
    if getattr(args, "n", None) is not None:
        out["n"] = args.n
    for item in getattr(args, "param", None) or []:
        k, _, v = item.partition("=")
        if not _:
            raise SystemExit(f"bad --param {item!r}, expected NAME=VALUE")
        out[k.strip()] = Fraction(v.strip())
    return out


def _assignments(text: str | None) -> dict:
    out = {}
    for item in (text or "").split(","):
        if item.strip():
            k, _, v = item.partition("=")
            out[k.strip()] = Fraction(v.strip())
    return out


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


# -- commands ---------------------------------------------------------------------------
def cmd_list(args) -> int:
    for c in list_cases():
        print(f"{c['id']:<16} params: {','.join(c['parameters']):<10} {c['description']}")
    return 0


def cmd_ricci(args) -> int:
    case = get_case(args.case, **_params(args))
    rs = case.ricci()
    at = _assignments(args.at)
    for var, r in zip(case.decomposition.variables, rs):
        if at:
            print(f"r_{var} = {rational_str(r.evaluate(at))}")
        else:
            print(f"r_{var} = {r}")
    return 0


def cmd_system(args) -> int:
    case = get_case(args.case, **_params(args))
    norm = _assignments(args.normalize) or case.normalization
    if case.decomposition is None:
        sysm = case.system()
        eqs = [e.substitute({k: v for k, v in norm.items() if k in e.variables}) for e in sysm.equations]
        keep = tuple(v for v in case.variables if v not in norm)
        sysm = EinsteinSystem([e.with_context(keep) for e in eqs], keep, norm, [], sysm.provenance)
    else:
        sysm = einstein_system(case.decomposition, norm, case.pairing, "lex",
                               {"case": case.id, **{k: str(v) for k, v in case.parameters.items()}})
    _emit(json.dumps(sysm.to_json_dict(), indent=2, sort_keys=True), args.out)
    return 0


def _load_equations(path: str) -> list[MultiPoly]:
    with open(path) as fh:
        data = json.load(fh)
    if "equations" in data:
        return [from_json_dict(e) for e in data["equations"]]
    if "basis" in data:
        return [from_json_dict(e) for e in data["basis"]]
    return [from_json_dict(data)]


def cmd_groebner(args) -> int:
    eqs = _load_equations(args.inp)
    variables = [v.strip() for v in args.vars.split(",")] if args.vars else list(eqs[0].variables)
    sat_var = None
    if args.saturate:
        # a leading variable absent from the equations is taken as the saturation variable
        present = set(eqs[0].variables)
        if variables[0] not in present:
            sat_var, variables = variables[0], variables[1:]
    ideal = Ideal([e.with_context(tuple(variables)) for e in eqs], tuple(variables))
    if args.saturate:
        f = parse_poly(args.saturate, tuple(variables))
        ideal = saturate(ideal, f, sat_var)
    gb = buchberger(ideal, order=args.order)
    _emit(json.dumps(gb.to_json_dict(), indent=2, sort_keys=True), args.out)
    return 0


def _load_poly(path: str) -> MultiPoly:
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        return parse_poly(text.strip())
    if "basis" in data:
        uni = [from_json_dict(g) for g in data["basis"]]
        uni = [g for g in uni if len(g.support()) == 1]
        if not uni:
            raise SystemExit("basis has no univariate element")
        return min(uni, key=lambda g: g.total_degree())
    if "equations" in data:
        raise SystemExit("expected a single univariate polynomial")
    return from_json_dict(data)


def cmd_roots(args) -> int:
    if args.fixture:
        p = paper_polynomial(args.fixture, Fraction(args.n) if args.n is not None else None)
    else:
        p = _load_poly(args.poly)
    var = p.univariate_variable()
    if var is None:
        raise SystemExit("polynomial is not univariate")
    p = p.with_context((var,))
    lo = Fraction(args.low) if args.low is not None else None
    hi = Fraction(args.high) if args.high is not None else None
    width = Fraction(args.width)
    ivs = [refine(iv, width) for iv in isolate_roots(p, lo, hi)]
    rep = root_report(p, ivs, width, label=args.fixture or "")
    if args.json:
        print(json.dumps(rep, indent=2, sort_keys=True))
    else:
        print(f"{len(ivs)} root(s) of degree-{rep['degree']} polynomial in "
              f"({rational_str(lo) if lo is not None else '-B'}, {rational_str(hi) if hi is not None else 'B'}]")
        for iv in ivs:
            print(f"  {var} ~ {decimal_str(iv.midpoint, 25)}  width {decimal_str(iv.width, 3)}")
    return 0


def cmd_run(args) -> int:
    opts = RunOptions(width=Fraction(args.width), saturation=args.saturation,
                      order=args.order.split(",") if args.order else None, fallback=args.fallback)
    run = run_case(args.case, _params(args), opts)
    if args.json:
        print(json.dumps(run.to_json_dict(), indent=2, sort_keys=True))
    else:
        print(run_summary(run))
    return 0 if run.all_verified else 1


def cmd_sweep(args) -> int:
    opts = SweepOptions(solve=not args.no_solve, timings=args.timings, workers=args.workers,
                        params={k: v for k, v in _params(args).items() if k != "n"})
    rep = sweep(args.case, args.n_from, args.n_to, opts)
    print(rep.to_csv() if args.report == "csv" else rep.to_json(), end="" if args.report == "csv" else "\n")
    return 0 if rep.ok else 1


VERIFY_CASES = [
    ("stiefel-metric7", {}),
    ("stiefel-metric7", {"n": 7}),
    ("stiefel-metric6", {}),
    ("stiefel-metric6", {"n": 7}),
    ("flag-q2", {"d1": 6, "d2": 3}),
    ("flag-q3-A1(3)", {"d1": 2, "d2": 4, "d3": 2}),
    ("flag-Sp-B2b", {"n": 4, "p": 2}),
]


def cmd_verify(args) -> int:
    results = []
    cases = VERIFY_CASES if args.all or not args.case else [(args.case, _params(args))]
    for cid, params in cases:
        rep = verify_transcription(cid, **params)
        tag = ",".join(f"{k}={v}" for k, v in params.items()) or "symbolic"
        for c in rep.checks:
            results.append((f"{cid}[{tag}] {c.name}", c.ok, c.detail))
        for c in rep.notes:
            print(f"NOTE  {cid}[{tag}] {c.name}: {c.detail}")
    if args.all:
        for fid in ("h2", "h3", "p1_at_1"):
            for n0 in (7, 9):
                for form, ok in printed_form_agreement(fid, n0).items():
                    results.append((f"printed forms {fid} {form} n={n0}", ok, {}))
        for n0 in range(args.n_from, args.n_to + 1):
            for name, ok in {**metric7_signs(n0), **metric6_signs(n0)}.items():
                results.append((f"sign n={n0} {name}", ok, {}))
    failed = 0
    for name, ok, detail in results:
        if not ok:
            failed += 1
        if not ok or args.verbose:
            extra = f" {json.dumps({k: str(v) for k, v in detail.items()})}" if detail else ""
            print(f"{'PASS' if ok else 'FAIL'}  {name}{extra}")
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


# -- parser ---------------------------------------------------------------------------------
def _add_params(p, n_required=False):
    p.add_argument("--n", type=int, required=n_required, help="the parameter n")
    p.add_argument("--param", action="append", metavar="NAME=VALUE", help="other case parameters")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spaces", description="Invariant Einstein metrics on homogeneous spaces")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list registered cases").set_defaults(func=cmd_list)

    p = sub.add_parser("ricci", help="Ricci components of a case")
    p.add_argument("--case", required=True)
    _add_params(p)
    p.add_argument("--at", help="evaluate at x=value,... instead of printing")
    p.set_defaults(func=cmd_ricci)

    p = sub.add_parser("system", help="normalized Einstein system as JSON")
    p.add_argument("--case", required=True)
    _add_params(p)
    p.add_argument("--normalize", help="pinned scales, e.g. x23=1")
    p.add_argument("--out")
    p.set_defaults(func=cmd_system)

    p = sub.add_parser("groebner", help="reduced Groebner basis of a system file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--order", default="lex", choices=["lex", "grlex", "grevlex"])
    p.add_argument("--vars", help="variable order; a new leading name becomes the saturation variable")
    p.add_argument("--saturate", help="polynomial to saturate by")
    p.add_argument("--out")
    p.set_defaults(func=cmd_groebner)

    p = sub.add_parser("roots", help="isolate real roots of a univariate polynomial")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", help="JSON polynomial, basis JSON or a text expression")
    g.add_argument("--fixture", help="printed polynomial id (h1, h2, h3)")
    p.add_argument("--n", type=int)
    p.add_argument("--from", dest="low")
    p.add_argument("--to", dest="high")
    p.add_argument("--width", default=str(DEFAULT_WIDTH))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("run", help="find, certify and classify positive solutions")
    p.add_argument("--case", required=True)
    _add_params(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--width", default=str(DEFAULT_WIDTH))
    p.add_argument("--saturation", default="J", choices=["I", "J"])
    p.add_argument("--order", help="lex order of the free variables, eliminated variable last")
    p.add_argument("--fallback", action="store_true", help="use per-variable eliminants with box matching")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="per-n checks over a range")
    p.add_argument("--case", required=True)
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("--report", choices=["csv", "json"], default="json")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-solve", action="store_true", help="sign checks only")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify-paper", help="transcription and sign-check fixtures")
    p.add_argument("--all", action="store_true")
    p.add_argument("--case")
    _add_params(p)
    p.add_argument("--n-from", type=int, default=7)
    p.add_argument("--n-to", type=int, default=50)
    p.add_argument("--verbose", "-v", action="store_true")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
