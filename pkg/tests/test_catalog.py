import pytest

from einstein_spaces.catalog import (POLYNOMIAL_IDS, ParameterError, UnknownCaseError, fixture_metadata, get_case,
                                     list_cases, paper_polynomial, paper_value, polynomial_forms,
                                     printed_form_agreement, verify_transcription)
from einstein_spaces.polycore import MultiPoly


def test_registry_lists_all_cases():
    ids = {c["id"] for c in list_cases()}
    assert {"flag-q2", "flag-q3-A1(3)", "flag-Sp-B2b", "stiefel-metric7", "stiefel-metric6", "wallach-SO"} <= ids


def test_unknown_case_and_bad_parameters():
    with pytest.raises(UnknownCaseError):
        get_case("nope")
    with pytest.raises(ParameterError):
        get_case("stiefel-metric7", n=3)
    with pytest.raises(ParameterError):
        get_case("flag-q2", d1=6)


def test_frozen_fixture_values():
    h1 = paper_polynomial("h1", 7)
    assert h1.degree("x13") == 10
    assert h1.leading_coefficient == 472850784
    assert paper_value("a", 7) == 16817600
    assert paper_value("p1_at_1", 7) == -30293984992896
    assert fixture_metadata("h1")["degree"] == 10


def test_h1_sample_values_match_polynomial():
    for n in (7, 11, 30):
        h1 = paper_polynomial("h1", n)
        for k in (0, 1, 2):
            assert h1.evaluate({"x13": k}) == paper_value(f"h1_at_{k}", n)


def test_parametric_fixture_specializes():
    generic = paper_polynomial("h2")
    for n in (7, 9):
        assert generic.specialize(n) == paper_polynomial("h2", n)


def test_every_fixture_id_resolves():
    for fid in POLYNOMIAL_IDS:
        if fid in ("h1", "h2", "h3"):
            assert paper_polynomial(fid, 8).total_degree() == 10
        else:
            assert paper_value(fid, 8) != 0


def test_printed_forms_of_h3_disagree_away_from_n7():
    assert polynomial_forms("h3") == ["expanded", "shifted"]
    assert printed_form_agreement("h3", 7) == {"expanded": True, "shifted": True}
    assert printed_form_agreement("h3", 9) == {"expanded": True, "shifted": False}
    assert all(printed_form_agreement("h2", 9).values())


def test_transcription_detector_flags_g1_only():
    rep = verify_transcription("stiefel-metric6")
    failed = [c.name for c in rep.checks if not c.ok]
    assert failed == ["g1"]
    assert "x12^2*x13^2" in rep.check("g1").detail["first_difference"]


def test_metric7_transcription_passes():
    rep = verify_transcription("stiefel-metric7", n=7)
    assert all(rep.check(name).ok for name in ("f1", "f2", "f3"))


def test_case_records_carry_solutions_and_saturation():
    case = get_case("stiefel-metric7", n=7)
    assert case.known_solutions
    sat = case.saturation_factor("J")
    assert isinstance(sat, MultiPoly) and sat.total_degree() >= 3
