"""Exact real roots of univariate polynomials over Q."""

from .sturm import (EndpointRootError, IsolatingInterval, SturmChain, cauchy_bound,
                    isolate_roots, positivity_certificate, refine, root_report, squarefree_part,
                    sturm_chain, sturm_count)

__all__ = [
    "EndpointRootError", "IsolatingInterval", "SturmChain", "cauchy_bound", "isolate_roots",
    "positivity_certificate", "refine", "root_report", "squarefree_part", "sturm_chain",
    "sturm_count",
]
