"""Exact rational scalars, univariate polynomials, factorization and real roots."""

from .factor import IrreducibleFactorization, factor_integer, factor_over_rationals
from .polynomial import (
    ONE,
    S,
    ZERO,
    ZERO_DEGREE,
    Polynomial,
    Rational,
    as_rational,
    format_poly,
    parse_poly,
    poly_gcd,
    poly_lcm,
    poly_xgcd,
)
from .roots import RootInterval, isolate_real_roots, root_sign, sturm_chain
from .squarefree import squarefree_decomposition, squarefree_part

__all__ = [
    "ONE", "S", "ZERO", "ZERO_DEGREE", "Polynomial", "Rational", "as_rational",
    "format_poly", "parse_poly", "poly_gcd", "poly_lcm", "poly_xgcd",
    "IrreducibleFactorization", "factor_integer", "factor_over_rationals",
    "RootInterval", "isolate_real_roots", "root_sign", "sturm_chain",
    "squarefree_decomposition", "squarefree_part",
]
