"""End-to-end search: eliminate, isolate, back-substitute, certify, classify, sweep."""

from .intervals import Interval, KrawczykResult, eval_interval, jacobian, krawczyk
from .run import (CaseRun, Inventory, RunOptions, SweepOptions, SweepReport, case_eliminant, case_equations,
                  classify, flag_q2_symbolic, frame_pattern, metric6_signs, metric7_signs, quadratic_closed_form,
                  quadratic_root_interval, run_case, run_summary, same_pattern, sweep, template_membership,
                  template_records, v5_inventory)
from .solve import (DEFAULT_WIDTH, Certificate, NonTriangularError, SolutionRecord, back_substitute, certify,
                    eliminate, exact_root, match_boxes, per_variable_roots, residual_bound, simplest_rational)

__all__ = [
    "Interval", "KrawczykResult", "eval_interval", "jacobian", "krawczyk", "CaseRun", "Inventory",
    "RunOptions", "SweepOptions", "SweepReport", "case_eliminant", "case_equations", "classify", "flag_q2_symbolic",
    "frame_pattern", "metric6_signs", "metric7_signs", "quadratic_closed_form", "quadratic_root_interval",
    "run_case", "run_summary", "same_pattern", "sweep", "template_membership", "template_records",
    "v5_inventory", "DEFAULT_WIDTH", "Certificate", "NonTriangularError", "SolutionRecord",
    "back_substitute", "certify", "eliminate", "exact_root", "match_boxes", "per_variable_roots",
    "residual_bound", "simplest_rational",
]
