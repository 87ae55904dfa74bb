"""Numerical linear algebra over the dual numbers.

Spectral decompositions, two flavors of singular value decomposition, polar
decomposition and the Moore-Penrose pseudoinverse for square dual matrices,
plus Yaglom's classification of 2x2 Laguerre transformations.
"""

from .dual import EPS, ONE, ZERO, Dual, poly_eval
from .errors import (
    DegenerateInput,
    DimensionMismatch,
    DualLinAlgError,
    NoSquareRoot,
    NotHermitian,
    NotInvertible,
    NotSkewSymmetric,
    NotSquare,
    NotSymmetric,
    PoleAt,
    VerificationError,
)
from .laguerre import (
    LaguerreClassification,
    LaguerreTransform,
    apply_transform,
    classify_transform,
)
from .linalg import (
    FLAVOR_STAR,
    FLAVOR_T,
    DualMatrix,
    DualVector,
    adjoint,
    extend_orthonormal,
    form,
    gram_schmidt,
    star_form,
    structure_check,
    structure_residual,
    t_form,
)
from .realspec import RealSpectral, SkewBlockForm, skew_block_diag, sym_eig
from .spectral import (
    SpectralBlock,
    SpectralDecomposition,
    eigenvalue_multiset,
    star_spectral,
    t_spectral,
)
from .svd import (
    PolarResult,
    SigmaBlock,
    SubspaceSplit,
    SvdResult,
    penrose_residuals,
    pinv_t,
    split_subspaces,
    svd,
    svd_invertible,
    t_polar,
)

__version__ = "0.1.0"

__all__ = [
    "Dual", "poly_eval", "EPS", "ONE", "ZERO",
    "DualVector", "DualMatrix", "adjoint", "form", "t_form", "star_form",
    "structure_check", "structure_residual", "gram_schmidt",
    "extend_orthonormal", "FLAVOR_T", "FLAVOR_STAR",
    "RealSpectral", "SkewBlockForm", "sym_eig", "skew_block_diag",
    "SpectralBlock", "SpectralDecomposition", "star_spectral", "t_spectral",
    "eigenvalue_multiset",
    "SvdResult", "SigmaBlock", "SubspaceSplit", "PolarResult",
    "svd", "svd_invertible", "split_subspaces", "t_polar", "pinv_t",
    "penrose_residuals",
    "LaguerreTransform", "LaguerreClassification", "apply_transform",
    "classify_transform",
    "DualLinAlgError", "DimensionMismatch", "NotSquare", "NotSymmetric",
    "NotSkewSymmetric", "NotHermitian", "NotInvertible", "NoSquareRoot",
    "DegenerateInput", "PoleAt", "VerificationError",
]
