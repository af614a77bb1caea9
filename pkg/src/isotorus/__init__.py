"""Exact computations for self-isogenies of complex tori.

Tori are ``C^n / Lambda`` with the lattice given over a multi-quadratic field.
The package computes kernel groups, polarization classes, subtorus orbits and
bounds on the essential dimension of isogenies.
"""
from .certificates import Assumptions, EdCertificate, VerdictOptions, exact_exe_classification, incompressibility_verdict
from .errors import IsotorusError, ParseError, ValidationError
from .field import QQ, FieldElement, FieldSpec, field_make
from .kernel import AbelianGroupStructure, brute_force_kernel_oracle, kernel_group, kernel_intersect_subtorus, rank_index_search
from .polarization import PolarizationReport, classify_polarization, eigenratio_gamma_check, shioda_mitani_make
from .problem import ProblemFile, load_problem, parse_problem, serialize_problem
from .torus import (
    ComplexTorus,
    Endomorphism,
    Subtorus,
    elliptic_curve,
    endo_make,
    endo_power,
    integer_matrix_endomorphism,
    power_torus,
    product_torus,
    subtorus_make,
    torus_make,
)

__version__ = "0.1.0"
