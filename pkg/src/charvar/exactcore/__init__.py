"""Exact arithmetic over Q(i): scalars, sparse polynomials, matrices."""

from .gaussian import HALF, I, ONE, ZERO, GaussianRational
from .matrix import (
    Matrix,
    RowSpace,
    fraction_free_echelon,
    kernel_basis,
    rank,
    solve,
    sparse_rank,
)
from .polynomial import (
    ONE_MONOMIAL,
    Monomial,
    Polynomial,
    format_polynomial,
    grade_components,
    is_registered,
    parse_polynomial,
    poly_arith,
    register_variable,
    register_variables,
    substitute,
)

__all__ = [
    "GaussianRational", "ZERO", "ONE", "I", "HALF",
    "Monomial", "ONE_MONOMIAL", "Polynomial", "parse_polynomial", "format_polynomial",
    "register_variable", "register_variables", "is_registered",
    "poly_arith", "substitute", "grade_components",
    "Matrix", "RowSpace", "kernel_basis", "rank", "solve", "sparse_rank",
    "fraction_free_echelon",
]
