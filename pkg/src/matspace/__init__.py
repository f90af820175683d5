"""Exact linear algebra for subspaces of n x n matrices over GF(p) and Q.

The toolkit provides exact prime-field and rational arithmetic, dense
matrices with characteristic/minimal polynomials and diagonalizability
tests, canonical subspaces of Mat_n with the trace-form orthogonal
complement, decision predicates with checkable witnesses, a recovery
pipeline that expresses suitable subspaces as S * Sym_n * S^-1, and an
exhaustive census engine for desk-scale verification.
"""

from ._version import __version__
from .census import (
    CensusReport,
    census,
    gaussian_binomial,
    max_diag_dim,
    subspace_stream,
    verify_classification,
)
from .errors import (
    BudgetExceeded,
    CapExceeded,
    Char2AlternatingResidual,
    DivisionByZero,
    FieldMismatch,
    InfiniteField,
    InvalidInput,
    MatSpaceError,
    NoInvertibleSolution,
    NotPrime,
    NotSymmetric,
    ShapeMismatch,
    Singular,
    SquareClassNotViolated,
    Unsupported,
    ZeroDiagonalEntry,
    ZeroVector,
)
from .fields import Field, PrimeField, RationalField, Scalar, is_prime, make_field
from .matrices import (
    Matrix,
    Vector,
    char_poly,
    det,
    eigenvalues_in_field,
    invert,
    is_diagonalizable,
    kernel_basis,
    min_poly,
    rref,
)
from .polys import Poly
from .predicates import (
    Verdict,
    all_diagonalizable,
    irreducible,
    non_isotropic,
    projective_points,
    spin,
    trivial_spectrum,
)
from .recovery import (
    BlockMaps,
    RecoveryReport,
    block_decompose,
    congruence_diagonalize,
    nondiag_witness,
    recover,
    solve_symmetrizer,
    square_class_normalize,
)
from .spaces import DEFAULT_BUDGET, MatSpace, VecSpace

__all__ = [
    "__version__",
    "BlockMaps",
    "BudgetExceeded",
    "CapExceeded",
    "CensusReport",
    "Char2AlternatingResidual",
    "DEFAULT_BUDGET",
    "DivisionByZero",
    "Field",
    "FieldMismatch",
    "InfiniteField",
    "InvalidInput",
    "MatSpace",
    "MatSpaceError",
    "Matrix",
    "NoInvertibleSolution",
    "NotPrime",
    "NotSymmetric",
    "Poly",
    "PrimeField",
    "RationalField",
    "RecoveryReport",
    "Scalar",
    "ShapeMismatch",
    "Singular",
    "SquareClassNotViolated",
    "Unsupported",
    "VecSpace",
    "Vector",
    "Verdict",
    "ZeroDiagonalEntry",
    "ZeroVector",
    "all_diagonalizable",
    "block_decompose",
    "census",
    "char_poly",
    "congruence_diagonalize",
    "det",
    "eigenvalues_in_field",
    "gaussian_binomial",
    "invert",
    "irreducible",
    "is_diagonalizable",
    "is_prime",
    "kernel_basis",
    "make_field",
    "max_diag_dim",
    "min_poly",
    "nondiag_witness",
    "non_isotropic",
    "projective_points",
    "recover",
    "rref",
    "solve_symmetrizer",
    "spin",
    "square_class_normalize",
    "subspace_stream",
    "trivial_spectrum",
    "verify_classification",
]
