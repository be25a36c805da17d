"""Travelling waves of the nonlinearly dispersive K_N(m,n) equation.

Compactons, weak-compactons, solitary and heavy-tail waves: closed-form
catalog, classification of cut-off profiles, a quadrature oracle and a
numerical verification suite.
"""

from .classify import Kind, SolutionClass, classify_pointwise, classify_profile, quadrature_case
from .errors import CompactonError
from .families import FamilyId, Profile, catalog_admissible, evaluate, evaluate_field, make_profile
from .params import (EquationParams, WaveParams, kinematics, make_equation, make_wave,
                     reduced_constants)

__version__ = "0.1.0"

__all__ = [
    "CompactonError", "EquationParams", "FamilyId", "Kind", "Profile", "SolutionClass",
    "WaveParams", "catalog_admissible", "classify_pointwise", "classify_profile",
    "evaluate", "evaluate_field", "kinematics", "make_equation", "make_profile", "make_wave",
    "quadrature_case", "reduced_constants",
]
