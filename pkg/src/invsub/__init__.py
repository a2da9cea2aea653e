"""Common invariant subspaces of finite sets of rational matrices, computed
exactly through compound matrices and Plücker relations."""
from .combinatorics import DomainError
from .divisors import ContractViolation, DivisorBasis, divisor_space, divisor_space_family, family_divisors
from .exact_arith import RatMatrix, char_poly, null_space, rational_eigenvalues, spectrum
from .exterior import Multivector, dual, exterior_power, wedge, wedge_all
from .invariant_search import (InvariantFamily, MatrixSet, UnsupportedSpectrum, algorithm_a, algorithm_b,
                               choose_shift, full_lattice_scan, verify_invariant)
from .params import ParamPoly
from .pluecker import (K_MAX, CapabilityError, ConstraintSet, constrain_family, is_totally_decomposable,
                       pluecker_relations, solve_constraints)
from .problem import ProblemFile, ProblemParseError, parse_problem
from .report import Report, parse_machine, render

__all__ = [
    "DomainError", "ContractViolation", "DivisorBasis", "divisor_space", "divisor_space_family",
    "family_divisors", "RatMatrix", "char_poly", "null_space", "rational_eigenvalues", "spectrum",
    "Multivector", "dual", "exterior_power", "wedge", "wedge_all", "InvariantFamily", "MatrixSet",
    "UnsupportedSpectrum", "algorithm_a", "algorithm_b", "choose_shift", "full_lattice_scan",
    "verify_invariant", "ParamPoly", "K_MAX", "CapabilityError", "ConstraintSet",
    "constrain_family", "is_totally_decomposable", "pluecker_relations", "solve_constraints",
    "ProblemFile", "ProblemParseError", "parse_problem", "Report", "parse_machine", "render",
]

__version__ = "0.1.0"
