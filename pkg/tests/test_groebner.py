from fractions import Fraction

import pytest
import sympy

from einstein_spaces.catalog import get_case
from einstein_spaces.groebner import (GroebnerBudgetError, Ideal, buchberger, divide, elimination_polynomial,
                                      is_groebner, is_reduced, minimal_polynomial, normal_form, saturate,
                                      standard_monomials)
from einstein_spaces.pipeline.run import case_equations, saturation_polynomial
from einstein_spaces.polycore import MultiPoly, equal_up_to_scalar, parse_poly

V = ("x", "y", "z")


def sympy_basis(gens, order):
    syms = sympy.symbols(V)
    exprs = [sympy.sympify(str(g).replace("^", "**")) for g in gens]
    return [parse_poly(str(sympy.expand(g)).replace("**", "^"), V) for g in sympy.groebner(exprs, *syms, order=order)]


@pytest.mark.parametrize("order", ["lex", "grevlex"])
def test_reduced_basis_matches_sympy(order):
    gens = [parse_poly(s, V) for s in ("x^2 + y*z - 2", "x*y - z + 1", "y^2 - x*z")]
    gb = buchberger(gens, order=order)
    assert is_groebner(gb.basis) and is_reduced(gb.basis)
    theirs = [g.with_context(V, order) for g in sympy_basis(gens, order)]
    assert len(theirs) == len(gb.basis)
    by_lm = {g.leading_monomial: g for g in gb.basis}
    for g in theirs:
        assert equal_up_to_scalar(g, by_lm[g.leading_monomial]) is not None


def test_division_identity():
    f = parse_poly("x^3*y - 2*x*z^2 + y^3 + 5", V)
    divs = [parse_poly("x*y - 1", V), parse_poly("z^2 - y", V)]
    q, r = divide(f, divs)
    assert sum((qi * d for qi, d in zip(q, divs)), r) == f
    lms = [d.leading_monomial for d in divs]
    for e in r.terms:
        assert not any(all(a <= b for a, b in zip(m, e)) for m in lms)


def test_unit_ideal_and_membership():
    gb = buchberger([parse_poly("x*y - 1", V), parse_poly("x", V)])
    assert gb.is_unit()
    gb = buchberger([parse_poly("x - y^2", V), parse_poly("y - z", V)])
    assert gb.contains(parse_poly("x - z^2", V))
    assert normal_form(parse_poly("x", V), gb.basis) != 0


def test_saturation_removes_component():
    # x*(x - 1) = 0, x*y = 0: saturating by x leaves x = 1, y = 0
    gens = [parse_poly("x^2 - x", ("x", "y")), parse_poly("x*y", ("x", "y"))]
    sat = saturate(Ideal(gens), parse_poly("x", ("x", "y")))
    assert sat.variables[0] == "z"
    gb = buchberger(sat, order="lex")
    kept = [g for g in gb.basis if "z" not in g.support()]
    assert sorted(str(g) for g in kept) == ["x - 1", "y"]


def test_standard_monomials_count_solutions():
    gb = buchberger([parse_poly("x^2 - 2", ("x", "y")), parse_poly("y^3 - x", ("x", "y"))], order="grevlex")
    assert len(standard_monomials(gb)) == 6
    assert standard_monomials(buchberger([parse_poly("x*y", ("x", "y"))])) is None


def test_minimal_polynomial_agrees_with_lex_eliminant():
    gens = [parse_poly(s, ("a", "b")) for s in ("a^2 + b^2 - 3", "a*b - 1")]
    gb_lex = buchberger(gens, order="lex")
    gb_grevlex = buchberger(gens, order="grevlex")
    e = elimination_polynomial(gb_lex, "b")
    m = minimal_polynomial(gb_grevlex, "b")
    assert equal_up_to_scalar(e.with_context(("b",)), m.with_context(("b",))) is not None
    assert e.degree("b") == 4


def test_case_eliminant_two_routes():
    case = get_case("stiefel-metric7", n=9)
    F, _ = case_equations(case)
    sat = saturate(Ideal(F, ("x2", "x12", "x13")), saturation_polynomial(case, "J", ("x2", "x12", "x13")))
    via_lex = elimination_polynomial(buchberger(sat, order="lex"), "x13")
    via_min = minimal_polynomial(buchberger(sat, order="grevlex"), "x13")
    assert equal_up_to_scalar(via_lex.with_context(("x13",)), via_min.with_context(("x13",))) is not None


def test_parametric_basis_specializes():
    gens = [parse_poly("(n-1)*x - y", ("x", "y")), parse_poly("x*y - n", ("x", "y"))]
    gb = buchberger(gens, order="lex")
    for n0 in (3, 5, 11):
        direct = buchberger([g.specialize(n0) for g in gens], order="lex")
        assert sorted(str(g) for g in direct.basis) == sorted(str(g.specialize(n0)) for g in gb.basis)


def test_integer_and_rational_inputs_agree():
    a = [parse_poly("x^2/3 - y/2", ("x", "y")), parse_poly("x*y - 1/5", ("x", "y"))]
    b = [g * 30 for g in a]
    assert [str(g) for g in buchberger(a).basis] == [str(g) for g in buchberger(b).basis]


def test_budget_exhaustion_raises():
    gens = [parse_poly(s, V) for s in ("x^3 - y*z + 1", "y^3 - x*z - 2", "z^3 - x*y + 3")]
    with pytest.raises(GroebnerBudgetError):
        buchberger(gens, order="lex", max_pairs=3)


def test_budget_env_variable(monkeypatch):
    monkeypatch.setenv("SPACES_GB_MAX_PAIRS", "2")
    gens = [parse_poly(s, V) for s in ("x^3 - y*z + 1", "y^3 - x*z - 2", "z^3 - x*y + 3")]
    with pytest.raises(GroebnerBudgetError):
        buchberger(gens, order="lex")


def test_zero_polynomial_saturation_rejected():
    with pytest.raises(ValueError):
        saturate(Ideal([parse_poly("x", V)]), MultiPoly(V, {}))


def test_normal_form_of_root_value():
    gb = buchberger([parse_poly("x^2 - 2", ("x",))])
    assert normal_form(parse_poly("x^4", ("x",)), gb.basis) == MultiPoly.constant(Fraction(4), ("x",))
