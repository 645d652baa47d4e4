"""recdet: determinant representations of linearly recurrent sequences.

A sequence given by a recurrence (full-history or fixed-order) equals a
sequence of upper-Hessenberg determinants; this package builds those
matrices exactly over the rationals or over rational polynomials,
evaluates their determinants by three independent algorithms, and ships
a catalog of classical families plus a small spec DSL and CLI.
"""

from .errors import (
    DivisionByZero,
    IndexBelowValidity,
    InexactDivision,
    MissingParams,
    NotHessenberg,
    OutOfRange,
    RecdetError,
    SizeTooLarge,
    SpecSemanticError,
    SpecSyntaxError,
    UnexpectedParams,
)
from .families import (
    FamilyId,
    family_names,
    family_oracle,
    family_ring,
    family_spec,
    ode_coefficients,
    ode_residual_check,
)
from .hessenberg import (
    LAPLACE_SIZE_LIMIT,
    SquareMatrix,
    Structure,
    det_bareiss,
    det_hessenberg_fast,
    det_laplace,
    hessenberg_leading_minors,
    identity,
    matrix_from_json,
    matrix_to_json,
    matrix_to_latex,
    matrix_to_text,
    random_hessenberg,
)
from .recurrence import (
    FixedOrderSpec,
    FullHistorySpec,
    SequencePrefix,
    VerificationCheck,
    VerificationReport,
    embed_fixed_order,
    eval_fixed_order,
    eval_full_history,
    theorem1_matrix,
    theorem2_matrix,
    verify_spec,
)
from .ring import (
    COUNTER,
    OpCounter,
    Polynomial,
    Rational,
    RingValue,
    latex_value,
    parse_value,
    poly_eval,
    render_value,
)

__version__ = "0.1.0"

__all__ = [
    "COUNTER",
    "DivisionByZero",
    "FamilyId",
    "FixedOrderSpec",
    "FullHistorySpec",
    "IndexBelowValidity",
    "InexactDivision",
    "LAPLACE_SIZE_LIMIT",
    "MissingParams",
    "NotHessenberg",
    "OpCounter",
    "OutOfRange",
    "Polynomial",
    "Rational",
    "RecdetError",
    "RingValue",
    "SequencePrefix",
    "SizeTooLarge",
    "SpecSemanticError",
    "SpecSyntaxError",
    "SquareMatrix",
    "Structure",
    "UnexpectedParams",
    "VerificationCheck",
    "VerificationReport",
    "__version__",
    "det_bareiss",
    "det_hessenberg_fast",
    "det_laplace",
    "embed_fixed_order",
    "eval_fixed_order",
    "eval_full_history",
    "family_names",
    "family_oracle",
    "family_ring",
    "family_spec",
    "hessenberg_leading_minors",
    "identity",
    "latex_value",
    "matrix_from_json",
    "matrix_to_json",
    "matrix_to_latex",
    "matrix_to_text",
    "ode_coefficients",
    "ode_residual_check",
    "parse_value",
    "poly_eval",
    "random_hessenberg",
    "render_value",
    "theorem1_matrix",
    "theorem2_matrix",
    "verify_spec",
]
