"""Isotropy data, Ricci components, Einstein systems and the so(N) oracle."""

from .brackets import (DegenerateSolveError, bracket_from_kahler_einstein, solve_brackets,
                       symbolic_dims)
from .decomposition import IsotropyDecomposition, ValidationReport, canonical, validate_decomposition
from .oracle import oracle_symmetric, so_structure_constants, stiefel_decomposition, wallach_decomposition
from .ricci import (DisconnectedPairingError, EinsteinSystem, InvalidDecompositionError,
                    cleared_difference, einstein_system, is_einstein, ricci_components,
                    scalar_curvature, scalar_curvature_formula, scalar_identity_holds)

__all__ = [
    "DegenerateSolveError", "bracket_from_kahler_einstein", "solve_brackets", "symbolic_dims",
    "IsotropyDecomposition", "ValidationReport", "canonical", "validate_decomposition",
    "oracle_symmetric", "so_structure_constants", "stiefel_decomposition", "wallach_decomposition",
    "DisconnectedPairingError", "EinsteinSystem", "InvalidDecompositionError", "cleared_difference",
    "einstein_system", "is_einstein", "ricci_components", "scalar_curvature",
    "scalar_curvature_formula", "scalar_identity_holds",
]
