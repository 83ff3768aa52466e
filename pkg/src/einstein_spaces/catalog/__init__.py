"""Registry of transcribed cases and fixture polynomials, with cross-checks."""

from .registry import (POLYNOMIAL_IDS, CaseRecord, ParameterError, SolutionTemplate, UnknownCaseError,
                       expr_value, fixture_metadata, get_case, list_cases, paper_polynomial, paper_value,
                       polynomial_forms, relation_scale, ricci_template)
from .verify import (Check, TranscriptionReport, first_difference, laurent_differences,
                     printed_form_agreement, verify_transcription)

__all__ = [
    "POLYNOMIAL_IDS", "CaseRecord", "ParameterError", "SolutionTemplate", "UnknownCaseError",
    "expr_value", "fixture_metadata", "get_case", "list_cases", "paper_polynomial", "paper_value",
    "polynomial_forms", "relation_scale", "ricci_template", "Check", "TranscriptionReport",
    "first_difference", "laurent_differences", "printed_form_agreement", "verify_transcription",
]
