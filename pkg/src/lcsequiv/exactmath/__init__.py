"""Exact rational kernel: polynomials, matrices, elimination and canonical forms."""
from .errors import (
    BothZero,
    ExactMathError,
    Inconsistent,
    IrrationalFactor,
    NonSquare,
    NotSquarefree,
    SingularMatrix,
    ZeroPolynomial,
)
from .frobenius import frobenius_basis, frobenius_form, local_minimal_polynomial, minimal_polynomial
from .matrix import (
    RationalMatrix,
    block_diag,
    char_poly,
    companion,
    hstack,
    inverse,
    kernel_basis,
    kernel_matrix,
    poly_of_matrix,
    rank,
    rref,
    rref_with_transform,
    solve,
    vstack,
)
from .poly import (
    ONE,
    S,
    RationalPoly,
    cauchy_index,
    gcd_free_basis,
    is_squarefree,
    multiplicity,
    poly_gcd,
    poly_lcm,
    real_root_count,
    squarefree_decompose,
    squarefree_part,
    sturm_chain,
    sturm_real_root_count,
)
from .smith import invariant_factors, smith_diagonal

__all__ = [name for name in dir() if not name.startswith("_")]
