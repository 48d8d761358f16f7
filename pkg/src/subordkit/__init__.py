"""Numerical certification of differential subordination results for S*_e.

The class S*_e holds the normalised analytic f with z f'/f subordinate to e^z.
"""
__version__ = "0.1.0"

from .admissibility import (GridSpec, OperatorCoefficients, TheoremSpec, base_quantities,
                            estimate_min_gap, find_threshold, get_theorem, make_point,
                            proof_lower_bound, threshold_holds, verify_exclusion, xi_value)
from .domains import (TargetDomain, boundary_point, contains, enclosing_radius, log_lemma_check,
                      mobius_log_min, solve_r0, winding_membership)
from .series import TaylorSeries, divide, evaluate, eval_on_circle, multiply, z_derivative, z_pow_derivative
from .subordination import (Y_f, chi_f_direct, chi_f_printed, classify_starlike_exp,
                            falsify_implication, is_subordinate, lhs_operator, starlike_quantities)

__all__ = [
    "GridSpec", "OperatorCoefficients", "TheoremSpec", "TargetDomain", "TaylorSeries",
    "Y_f", "base_quantities", "boundary_point", "chi_f_direct", "chi_f_printed",
    "classify_starlike_exp", "contains", "divide", "enclosing_radius", "estimate_min_gap",
    "eval_on_circle", "evaluate", "falsify_implication", "find_threshold", "get_theorem",
    "is_subordinate", "lhs_operator", "log_lemma_check", "make_point", "mobius_log_min",
    "multiply", "proof_lower_bound", "solve_r0", "starlike_quantities", "threshold_holds",
    "verify_exclusion", "winding_membership", "xi_value", "z_derivative", "z_pow_derivative",
]
