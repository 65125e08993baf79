"""Melnikov functions up to order three for planar piecewise-linear centres
switching on ``y^n = x^m``, Wronskian-based zero counting for the resulting
function families, and limit-cycle verification by exact return maps."""

from .classify import ClassificationResult, classify, reproduce_tables
from .closed_forms import coeffs_from_target_rho, coeffs_to_rho, delta1_vanishing, rho_form
from .errors import *  # noqa: F401,F403
from .melnikov import MelnikovFunction, melnikov_functions, melnikov_numeric
from .model import ParityCase, PerturbationCoeffs, PwlSystem, SwitchingCurve, r_of_x, x_of_r
from .poincare import ReturnMap, displacement, find_limit_cycles, return_map

__version__ = "0.1.0"

__all__ = [
    "ClassificationResult",
    "MelnikovFunction",
    "ParityCase",
    "PerturbationCoeffs",
    "PwlSystem",
    "ReturnMap",
    "SwitchingCurve",
    "classify",
    "coeffs_from_target_rho",
    "coeffs_to_rho",
    "delta1_vanishing",
    "displacement",
    "find_limit_cycles",
    "melnikov_functions",
    "melnikov_numeric",
    "r_of_x",
    "reproduce_tables",
    "return_map",
    "rho_form",
    "x_of_r",
]
