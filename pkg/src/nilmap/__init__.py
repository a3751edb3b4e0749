"""Exact-arithmetic toolkit for polynomial maps with nilpotent Jacobians."""

from .analysis import (
    CoefficientSystem,
    DependenceCertificate,
    NilpotencyReport,
    check_divergence_coefficients,
    coefficient_system,
    conjugate,
    is_nilpotent,
    is_nilpotent_bruteforce,
    jacobian,
    linear_dependence,
    nilpotency_equations,
)
from .classify import (
    CanonicalFormA,
    FormAInstance,
    GeneralizedFormB,
    ReducedForm4D,
    ReductionStatus,
    build_canonical_pair,
    certify_dependence,
    keller_parameterized_check,
    leading_part_degree,
    nilpotency_system,
    normalize_low_z_degree,
    recognize_canonical_pair,
    reduce_4d,
    reduce_generalized,
    split_dependent_4d,
    triangularize_top_coefficients,
)
from .errors import (
    ConstructionMismatch,
    DimensionMismatch,
    NilmapError,
    NotNilpotentTop,
    NotTriangularizable,
    ParseError,
    PreconditionError,
    ShapeError,
    TheoremViolation,
)
from .linalg import (
    LinearMap,
    PolyMatrix,
    RationalMatrix,
    elementary_permutation,
    elementary_row_add,
    kernel,
    poly_det,
    poly_matrix_rank,
    principal_minor_sum,
)
from .parsing import (
    format_map,
    format_polynomial,
    load_map_text,
    map_from_document,
    map_to_document,
    parse_map,
    parse_polynomial,
)
from .poly import Polynomial, PolyMap, compose_map, univariate_gcd
from .tame import (
    ElementaryMap,
    TameFactorization,
    classify_and_decompose,
    compose_factorization,
    formal_inverse,
    keller_check,
    tame_decompose,
)

__version__ = "1.0.0"

__all__ = [
    "CanonicalFormA",
    "CoefficientSystem",
    "ConstructionMismatch",
    "DependenceCertificate",
    "DimensionMismatch",
    "ElementaryMap",
    "FormAInstance",
    "GeneralizedFormB",
    "LinearMap",
    "NilmapError",
    "NilpotencyReport",
    "NotNilpotentTop",
    "NotTriangularizable",
    "ParseError",
    "PolyMap",
    "PolyMatrix",
    "Polynomial",
    "PreconditionError",
    "RationalMatrix",
    "ReducedForm4D",
    "ReductionStatus",
    "ShapeError",
    "TameFactorization",
    "TheoremViolation",
    "build_canonical_pair",
    "certify_dependence",
    "check_divergence_coefficients",
    "classify_and_decompose",
    "coefficient_system",
    "compose_factorization",
    "compose_map",
    "conjugate",
    "elementary_permutation",
    "elementary_row_add",
    "formal_inverse",
    "format_map",
    "format_polynomial",
    "is_nilpotent",
    "is_nilpotent_bruteforce",
    "jacobian",
    "keller_check",
    "keller_parameterized_check",
    "kernel",
    "leading_part_degree",
    "linear_dependence",
    "load_map_text",
    "map_from_document",
    "map_to_document",
    "nilpotency_equations",
    "nilpotency_system",
    "normalize_low_z_degree",
    "parse_map",
    "parse_polynomial",
    "poly_det",
    "poly_matrix_rank",
    "principal_minor_sum",
    "recognize_canonical_pair",
    "reduce_4d",
    "reduce_generalized",
    "split_dependent_4d",
    "tame_decompose",
    "triangularize_top_coefficients",
    "univariate_gcd",
]
