"""Triangular representations of linear codes over GF(p) and Q."""

from .code import BudgetExceeded, Codeword, LinearCode, double_code, puncture
from .complex import TriangularConfiguration, kernel
from .enumerator import (
    LaurentPolynomial, kernel_weight_enumerator, recover_code_enumerator,
    recover_multivariate, weight_enumerator,
)
from .field import FieldElement, FieldSpec
from .potts import WeightedGraph, cut_space_code, potts_direct, potts_via_representation
from .representation import Representation, build_representation, verify_representation

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "Codeword", "LinearCode", "double_code", "puncture",
    "TriangularConfiguration", "kernel", "LaurentPolynomial", "kernel_weight_enumerator",
    "recover_code_enumerator", "recover_multivariate", "weight_enumerator", "FieldElement",
    "FieldSpec", "WeightedGraph", "cut_space_code", "potts_direct", "potts_via_representation",
    "Representation", "build_representation", "verify_representation",
]
