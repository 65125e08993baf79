"""Chebyshev-system tools: basis, families, Wronskians, root counting."""

from .basis import BASIS_SIZE, BasisFunction, evaluate_combination, u
from .bounds import ZeroCountBound, bound_from_nus, general_bound, wronskian_zero_counts, zero_count_bound
from .discriminant import QuarticAnalysis, factored_discriminant, quartic_discriminant, quartic_sign_analysis
from .families import FAMILY_BASES, FAMILY_NAMES, OrderedFamily, family
from .polynomials import NAMED, Polynomial, named_polynomial, quartic, quartic_coefficients
from .realize import Realization, realize_in_span, realize_zeros, sign_change_zeros
from .regions import IsolatedRoot, KInterval, KRegion, RegionConstants, region_constants
from .sturm import RootIsolation, count_real_roots, descartes_bound, positive_root_count
from .wronskian import CLOSED_FORMS, ClosedWronskian, closed_wronskian, wronskian_closed, wronskian_numeric, wronskian_sequence

__all__ = [
    "BASIS_SIZE", "BasisFunction", "evaluate_combination", "u",
    "ZeroCountBound", "bound_from_nus", "general_bound", "wronskian_zero_counts", "zero_count_bound",
    "QuarticAnalysis", "factored_discriminant", "quartic_discriminant", "quartic_sign_analysis",
    "FAMILY_BASES", "FAMILY_NAMES", "OrderedFamily", "family",
    "NAMED", "Polynomial", "named_polynomial", "quartic", "quartic_coefficients",
    "Realization", "realize_in_span", "realize_zeros", "sign_change_zeros",
    "IsolatedRoot", "KInterval", "KRegion", "RegionConstants", "region_constants",
    "RootIsolation", "count_real_roots", "descartes_bound", "positive_root_count",
    "CLOSED_FORMS", "ClosedWronskian", "closed_wronskian", "wronskian_closed", "wronskian_numeric",
    "wronskian_sequence",
]
