"""Groebner bases (Buchberger with Gebauer-Moeller criteria) and elimination."""

from .engine import GroebnerBudgetError
from .ideal import (GroebnerBasis, Ideal, buchberger, divide, elimination_polynomial,
                    fresh_variable, is_groebner, is_reduced, minimal_polynomial, normal_form,
                    s_polynomial, saturate, standard_monomials, univariate_elements)

__all__ = [
    "GroebnerBudgetError", "GroebnerBasis", "Ideal", "buchberger", "divide",
    "elimination_polynomial", "fresh_variable", "is_groebner", "is_reduced",
    "minimal_polynomial", "normal_form", "s_polynomial", "saturate", "standard_monomials",
    "univariate_elements",
]
