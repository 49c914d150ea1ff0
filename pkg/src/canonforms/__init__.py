"""Exact canonical forms of rational matrices, polynomial matrices and pencils.

All arithmetic is over the rationals (``fractions.Fraction``) and
rational-coefficient polynomials; nothing is rounded.
"""

from .canonical import (
    ElementaryDivisorList,
    JordanForm,
    RationalCanonicalForm,
    build_normal_form,
    elementary_divisors,
    equivalence_normal_form,
    is_similar,
    jordan_block,
    jordan_form,
    minimal_polynomial,
    rational_form,
    similarity_invariants,
    similarity_transform,
)
from .errors import CanonFormsError
from .matrices import (
    Matrix,
    SymmetricMatrix,
    adjugate,
    adjugate_eigenvector,
    char_matrix,
    char_poly,
    companion,
    determinant,
    determinantal_divisor,
    inverse,
    parse_matrix_text,
)
from .numeric import (
    Polynomial,
    Rational,
    factor_over_rationals,
    isolate_real_roots,
    parse_poly,
    poly_gcd,
    squarefree_decomposition,
)
from .oscillations import (
    FirstOrderSystem,
    SecondOrderSystem,
    StabilityVerdict,
    SymbolicSolution,
    analyze_second_order,
    classify_stability_first_order,
    solve_first_order,
    splitting_criterion,
)
from .pencil import (
    Inertia,
    Pencil,
    PencilInvariants,
    SimultaneousDiagonalization,
    SpectralCertificate,
    inertia,
    is_positive_definite,
    is_regular,
    pair_splits,
    pencil_invariants,
    pencil_to_jordan,
    simultaneous_diagonalize,
    strictly_equivalent,
)
from .smith import SmithDecomposition, invariant_factors, smith_normal_form

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
