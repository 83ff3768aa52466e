from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from einstein_spaces.polycore import MultiPoly, parse_poly
from einstein_spaces.realroots import (EndpointRootError, cauchy_bound, isolate_roots, positivity_certificate,
                                       refine, sturm_chain, sturm_count, squarefree_part)

X = ("x",)


def poly_from_roots(roots, lead=1):
    p = MultiPoly.constant(lead, X)
    x = MultiPoly.variable("x", X)
    for r in roots:
        p = p * (x - r)
    return p


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-8, 8), min_size=1, max_size=6),
       st.fractions(-10, 10, max_denominator=7), st.fractions(-10, 10, max_denominator=7))
def test_sturm_count_matches_brute_force(roots, a, b):
    if a == b or a in roots or b in roots:
        return
    a, b = min(a, b), max(a, b)
    assert sturm_count(poly_from_roots(roots), a, b) == len({r for r in roots if a < r <= b})


def test_count_all_matches_sympy():
    p = parse_poly("x^5 - 3*x^3 + x - 1/7", X)
    expected = len(sympy.real_roots(sympy.Poly([1, 0, -3, 0, 1, sympy.Rational(-1, 7)], sympy.Symbol("x"))))
    assert sturm_chain(p).count_all() == expected


def test_isolation_is_disjoint_and_complete():
    p = poly_from_roots([Fraction(1, 3), Fraction(1, 2), 2, 2, -5])
    ivs = isolate_roots(p)
    assert len(ivs) == 4
    for a, b in zip(ivs, ivs[1:]):
        assert a.high <= b.low
    assert all(iv.is_valid() for iv in ivs)
    mult = {iv.midpoint > 1 and iv.midpoint < 3: iv.multiplicity for iv in ivs}
    assert mult[True] == 2


def test_refine_to_width_and_exact_hits():
    p = parse_poly("x^2 - 2", X)
    iv = [iv for iv in isolate_roots(p) if iv.low >= 0][0]
    fine = refine(iv, Fraction(1, 10 ** 30))
    assert fine.width <= Fraction(1, 10 ** 30)
    assert fine.low ** 2 < 2 < fine.high ** 2
    q = poly_from_roots([1, 3])
    hit = refine(isolate_roots(q, 0, 4)[0], Fraction(1, 10 ** 6))
    assert hit.contains(1)


def test_endpoint_roots_are_errors():
    with pytest.raises(EndpointRootError):
        sturm_count(poly_from_roots([1, 2]), 1, 3)


def test_positivity_certificate_sign_pattern():
    assert positivity_certificate(parse_poly("x^4 - 2*x^3 + x^2 - x + 5", X))
    assert not positivity_certificate(parse_poly("x^2 + x + 1", X))
    assert positivity_certificate(parse_poly("-x^2 + x - 1", X), up_to_sign=True)


def test_bounds_and_squarefree():
    p = poly_from_roots([7, -9, 1], lead=3)
    B = cauchy_bound(p)
    assert B > 9
    assert squarefree_part(p * poly_from_roots([7])).degree("x") == 3
