"""Star configurations on generic hypersurfaces: exact computations over F_p and Q."""

from .certify import (
    Certificate,
    MSelection,
    Strategy,
    Verdict,
    certify_tuple,
    evaluation_matrix,
    experimental_certify,
    recheck,
    tangent_ideal_gens,
    verify,
    witness_m,
)
from .classify import ClassVerdict, Classification, classify, dimension_bound
from .field import FieldConfig, FieldKind
from .linalg import DenseMatrix, a_matrix, det, nullspace, rank, rref, solve
from .membership import Decomposition, MacaulayMatrix, Membership, contains, decompose, ideal_dim, macaulay_matrix
from .poly import MultiPoly, PolySyntaxError, monomial_basis, parse_poly
from .star import (
    LinearFormSet,
    ProjectivePoint,
    TupleNLRD,
    expected_hf,
    hilbert_function,
    is_general_position,
    random_general_forms,
    star_dimension,
    star_generators,
    star_points,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ClassVerdict",
    "Classification",
    "Decomposition",
    "DenseMatrix",
    "FieldConfig",
    "FieldKind",
    "LinearFormSet",
    "MSelection",
    "MacaulayMatrix",
    "Membership",
    "MultiPoly",
    "PolySyntaxError",
    "ProjectivePoint",
    "Strategy",
    "TupleNLRD",
    "Verdict",
    "a_matrix",
    "certify_tuple",
    "classify",
    "contains",
    "decompose",
    "det",
    "dimension_bound",
    "evaluation_matrix",
    "expected_hf",
    "experimental_certify",
    "hilbert_function",
    "ideal_dim",
    "is_general_position",
    "macaulay_matrix",
    "monomial_basis",
    "nullspace",
    "parse_poly",
    "random_general_forms",
    "rank",
    "recheck",
    "rref",
    "solve",
    "star_dimension",
    "star_generators",
    "star_points",
    "tangent_ideal_gens",
    "verify",
    "witness_m",
]
