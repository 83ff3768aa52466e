from fractions import Fraction

import pytest

from einstein_spaces.catalog import get_case
from einstein_spaces.homspace import (DegenerateSolveError, DisconnectedPairingError, IsotropyDecomposition,
                                      InvalidDecompositionError, bracket_from_kahler_einstein, einstein_system,
                                      is_einstein, oracle_symmetric, ricci_components, scalar_curvature,
                                      scalar_curvature_formula, scalar_identity_holds, so_structure_constants,
                                      solve_brackets, stiefel_decomposition, symbolic_dims,
                                      validate_decomposition, wallach_decomposition)


@pytest.mark.parametrize("blocks,iso", [([2, 2, 2], []), ([2, 3, 2], [2]), ([1, 4, 2], [2])])
def test_oracle_is_symmetric_and_valid(blocks, iso):
    d = so_structure_constants(blocks, iso)
    assert oracle_symmetric(d)
    assert validate_decomposition(d)


@pytest.mark.parametrize("ks", [(2, 3, 2), (3, 2, 2), (2, 2, 4)])
def test_closed_form_triples_match_oracle(ks):
    closed = stiefel_decomposition(*ks)
    oracle = so_structure_constants(list(ks), [2])
    assert closed.variables == oracle.variables
    assert closed.dims == oracle.dims
    assert closed.triples == oracle.triples


def test_wallach_normal_metric_is_einstein():
    w = wallach_decomposition(2, 2, 2)
    assert is_einstein(w, {"x12": 1, "x13": 1, "x23": 1})
    assert not is_einstein(w, {"x12": 1, "x13": 2, "x23": 1})


def test_kahler_einstein_bracket():
    assert bracket_from_kahler_einstein(6, 3) == 1
    assert bracket_from_kahler_einstein(4, 2) == Fraction(2, 3)
    d1, d2 = symbolic_dims("d1", "d2")
    assert bracket_from_kahler_einstein(d1, d2) == d1 * d2 / (d1 + 4 * d2)
    with pytest.raises(ValueError):
        bracket_from_kahler_einstein(0, 3)


def test_solve_brackets_makes_point_einstein():
    dims = [2, 4, 2]
    sol = solve_brackets(dims, {}, [(2, 0, 1), (1, 0, 0)], {"x1": 1, "x2": 2, "x3": 3})
    d = IsotropyDecomposition(dims, sol)
    assert is_einstein(d, {"x1": 1, "x2": 2, "x3": 3})
    with pytest.raises(DegenerateSolveError):
        solve_brackets(dims, {}, [(1, 0, 0)], {"x1": 1, "x2": 1, "x3": 1})


def test_a13_case_has_kahler_einstein_point():
    case = get_case("flag-q3-A1(3)", d1=2, d2=4, d3=2)
    assert is_einstein(case.decomposition, {"x1": 1, "x2": 2, "x3": 3})


def test_ricci_is_homogeneous_of_degree_minus_one():
    d = stiefel_decomposition(2, 3, 2)
    x = {"x1": Fraction(3), "x2": Fraction(1, 2), "x12": Fraction(5, 7), "x13": Fraction(2), "x23": Fraction(1)}
    for r in ricci_components(d):
        assert r.evaluate({k: 2 * v for k, v in x.items()}) == r.evaluate(x) / 2


def test_scalar_curvature_identity():
    for d in (stiefel_decomposition(2, 3, 2), wallach_decomposition(1, 2, 3), so_structure_constants([1, 4, 2], [2])):
        assert scalar_identity_holds(d)
        assert scalar_curvature(d) == scalar_curvature_formula(d)


def test_parametric_stiefel_specializes():
    case = get_case("stiefel-metric7")
    at7 = get_case("stiefel-metric7", n=7)
    x = {"x2": Fraction(1, 3), "x12": Fraction(2), "x13": Fraction(3, 5), "x23": 1}
    for r, r7 in zip(case.ricci(), at7.ricci()):
        assert r.evaluate(x, 7) == r7.evaluate(x)


def test_einstein_system_pairing_errors():
    d = stiefel_decomposition(2, 3, 2)
    with pytest.raises(DisconnectedPairingError):
        einstein_system(d, {"x23": 1}, [(0, 1), (2, 3)])
    with pytest.raises(KeyError):
        einstein_system(d, {"x23": 1}, [("x1", "x99")])
    sysm = einstein_system(d, {"x23": 1})
    assert len(sysm.equations) == 4
    assert sysm.variables == ("x1", "x2", "x12", "x13")


def test_invalid_dimension_rejected():
    with pytest.raises(InvalidDecompositionError):
        ricci_components(IsotropyDecomposition([2, -1], {}))
