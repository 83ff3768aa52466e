import json
from collections import Counter
from fractions import Fraction

import pytest

from einstein_spaces.catalog import get_case
from einstein_spaces.groebner import Ideal, buchberger, saturate
from einstein_spaces.pipeline import (Interval, RunOptions, SweepOptions, back_substitute, case_eliminant, certify,
                                      classify, eval_interval, krawczyk, run_case, simplest_rational, sweep,
                                      v5_inventory)
from einstein_spaces.pipeline.run import case_equations, saturation_polynomial
from einstein_spaces.polycore import parse_poly

XY = ("x", "y")


def test_interval_arithmetic_encloses():
    a, b = Interval(Fraction(-1), Fraction(2)), Interval(Fraction(1, 3), Fraction(1, 2))
    assert (a * b).contains(Fraction(-1, 2)) and (a * b).contains(1)
    assert (a ** 2).lo == 0 and (a ** 2).hi == 4
    assert (b / b).contains(1)
    assert (a + b).subset(Interval(Fraction(-1), Fraction(5, 2)))
    with pytest.raises(ZeroDivisionError):
        b / a


def test_eval_interval_contains_pointwise_values():
    p = parse_poly("x^3 - 2*x*y + y^2 - 1/3", XY)
    box = {"x": Interval(Fraction(1, 2), Fraction(3, 4)), "y": Interval(Fraction(-1), Fraction(1, 5))}
    enc = eval_interval(p, box)
    for x in (Fraction(1, 2), Fraction(5, 8), Fraction(3, 4)):
        for y in (Fraction(-1), Fraction(0), Fraction(1, 5)):
            assert enc.contains(p.evaluate({"x": x, "y": y}))


def test_krawczyk_certifies_and_rejects():
    F = [parse_poly("x^2 + y^2 - 2", XY), parse_poly("x - y", XY)]
    near = {"x": Interval(Fraction(99, 100), Fraction(101, 100)), "y": Interval(Fraction(99, 100), Fraction(101, 100))}
    res = krawczyk(F, XY, near)
    assert res.ok and res.box["x"].contains(1)
    far = {"x": Interval(Fraction(2), Fraction(3)), "y": Interval(Fraction(2), Fraction(3))}
    assert not krawczyk(F, XY, far).ok


def test_certify_exact_point_and_irrational_root():
    F = [parse_poly("x^2 - 2", ("x",))]
    cert = certify(F, ("x",), {"x": Interval(Fraction(141, 100), Fraction(142, 100))}, Fraction(1, 10 ** 30))
    assert cert.verified and cert.method == "krawczyk"
    assert cert.box["x"].width <= Fraction(1, 10 ** 30)
    exact = certify([parse_poly("x - 3/7", ("x",))], ("x",), {"x": Interval.point(Fraction(3, 7))})
    assert exact.verified and exact.method == "exact" and exact.residual_bound == 0


def test_simplest_rational():
    assert simplest_rational(Fraction(3, 10), Fraction(2, 5)) == Fraction(1, 3)
    assert simplest_rational(Fraction(7, 2), Fraction(9, 2)) == 4


def _metric7_basis(kind, n=7):
    case = get_case("stiefel-metric7", n=n)
    F, _ = case_equations(case)
    V = ("x2", "x12", "x13")
    sat = saturate(Ideal(F, V), saturation_polynomial(case, kind, V))
    return buchberger(sat, order="lex")


def test_back_substitution_jensen_branch():
    gb = _metric7_basis("I")
    boxes = back_substitute(gb, {"x13": Fraction(1)}, ("x2", "x12", "x13"), Fraction(1, 10 ** 25))
    vals = sorted(float(b["x2"].mid) for b in boxes if b["x2"].lo > 0)
    assert len(vals) == 2
    assert abs(vals[0] - 0.392375) < 1e-6 and abs(vals[1] - 1.274292) < 1e-6
    for b in boxes:
        assert b["x12"].intersects(b["x2"])


def test_back_substitution_rejects_non_root():
    gb = _metric7_basis("J")
    assert back_substitute(gb, {"x13": Fraction(1, 2)}, ("x2", "x12", "x13")) == []


def test_run_metric7_n7():
    run = run_case("stiefel-metric7", {"n": 7})
    assert run.all_verified and run.scope == "complete"
    assert Counter(r.classification for r in run.records) == {"jensen": 2, "new": 2}
    new = sorted(float(r.box["x13"].mid) for r in run.by_class("new"))
    assert abs(new[0] - 0.253386) < 1e-6 and abs(new[1] - 1.161367) < 1e-6
    assert all(r.residual_bound < Fraction(1, 10 ** 15) for r in run.records if r.certificate == "krawczyk")
    jensen = [r for r in run.by_class("jensen")]
    assert [r.exact["x2"] for r in jensen] == ["(5 - sqrt(7))/6", "(5 + sqrt(7))/6"]


def test_run_metric6_windows():
    run = run_case("stiefel-metric6", {"n": 7})
    assert run.all_verified
    new = sorted(float(r.box["x13"].mid) for r in run.by_class("new"))
    assert len(new) == 2
    assert abs(new[0] - 0.350124) < 1e-6 and abs(new[1] - 1.139338) < 1e-6
    assert all(v == 1 for v in run.window_hits.values())


def test_order_permutations_give_same_solutions():
    def summary(order):
        run = run_case("stiefel-metric7", {"n": 7}, RunOptions(order=order))
        return [(r.classification, round(float(r.box["x13"].mid), 12), round(float(r.box["x2"].mid), 12))
                for r in run.records]
    base = summary(["x2", "x12", "x13"])
    assert summary(["x2", "x13", "x12"]) == base
    assert summary(["x12", "x13", "x2"]) == base
    with pytest.raises(ValueError):
        run_case("stiefel-metric7", {"n": 7}, RunOptions(order=["x2", "x12"]))


def test_fallback_matching_agrees():
    direct = run_case("stiefel-metric7", {"n": 7})
    matched = run_case("stiefel-metric7", {"n": 7}, RunOptions(fallback=True))
    assert matched.fallback == "requested"
    assert [r.classification for r in matched.records] == [r.classification for r in direct.records]
    for a, b in zip(direct.records, matched.records):
        assert all(a.box[v].intersects(b.box[v]) for v in ("x2", "x12", "x13"))


def test_saturation_I_keeps_x13_equal_one():
    run = run_case("stiefel-metric7", {"n": 7}, RunOptions(saturation="I"))
    assert run.eliminant.degree("x13") == 11
    assert len(run.by_class("jensen")) == 2 and len(run.by_class("new")) == 2


def test_two_summand_flag_exact():
    run = run_case("flag-q2", {"d1": 6, "d2": 3})
    assert sorted((r.classification, r.box["x2"].lo) for r in run.records) == [("kahler", 2), ("new", 1)]
    assert any("normal metric" in note for r in run.records for note in r.notes)


def test_classify_unverified_record():
    run = run_case("flag-q2", {"d1": 6, "d2": 3})
    rec = run.records[0]
    rec.verified = False
    rec.provenance.pop("template", None)
    assert classify(rec, run.case) == "unverified"


def test_inventory_six_distinct_metrics():
    inv = v5_inventory(7)
    assert inv.distinct == 6
    assert inv.pairwise_disjoint() and inv.all_verified


# regression locks: values computed once by this package and frozen
def test_sp_counts_locked():
    run = run_case("flag-Sp-B2b", {"n": 3, "p": 1})
    assert run.all_verified and len(run.records) == 6
    exact = sorted(tuple(r.box[v].lo for v in ("x2", "x3", "x4")) for r in run.records if r.certificate == "exact")
    F = Fraction
    assert exact == [(F(2, 3), F(1, 3), F(4, 3)), (F(10, 7), F(3, 7), F(4, 7)), (F(2), F(3), F(4)),
                     (F(10, 3), F(7, 3), F(4, 3))]
    # no printed Kahler template for this case, so nothing is labelled kahler
    assert {r.classification for r in run.records} == {"new"}


def test_a13_free_brackets_sextic_locked():
    case = get_case("flag-q3-A1(3)", d1=2, d2=4, d3=2, A=1, B=2)
    u = case_eliminant(case, "J", ["x2", "x3"]).primitive()
    assert u.to_dense() == [432, 300, -1018, -396, 295, 324, 64]


def test_a13_kahler_einstein_brackets():
    run = run_case("flag-q3-A1(3)", {"d1": 2, "d2": 2, "d3": 2})
    assert Counter(r.classification for r in run.records) == {"kahler": 1, "new": 2}
    assert run.eliminant.degree("x3") == 6


def test_wallach_normal_metric_only():
    run = run_case("wallach-SO", {"l": 2, "m": 2, "n": 2})
    assert [(r.box["x12"].lo, r.box["x13"].lo) for r in run.records] == [(1, 1)]


def test_json_is_deterministic():
    a = json.dumps(run_case("flag-q2", {"d1": 4, "d2": 2}).to_json_dict(), sort_keys=True)
    b = json.dumps(run_case("flag-q2", {"d1": 4, "d2": 2}).to_json_dict(), sort_keys=True)
    assert a == b
    assert json.loads(a)["records"][0]["box"]["x2"] == {"exact": "2"}


def test_sweep_rows_and_empty_range():
    rep = sweep("stiefel-metric7", 7, 10, SweepOptions(solve=False))
    assert [row["n"] for row in rep.rows] == [7, 8, 9, 10]
    # the h1 root below 1 leaves the (1-4/n, 1-3/n) window for n < 9
    assert [row["windows"]["alpha"] for row in rep.rows] == [0, 0, 1, 1]
    assert [row["ok"] for row in rep.rows] == [False, False, True, True]
    assert all(all(row["signs"].values()) for row in rep.rows)
    assert rep.to_csv().splitlines()[0].startswith("n,")
    assert sweep("stiefel-metric7", 10, 9).rows == []
