"""Numerics for Hilbert spaces of disk-analytic functions on which the
backward shift acts contractively: reproducing kernels, isometric model
embeddings, spectral factorization, shift actions, invariance criteria and
reverse-Carleson diagnostics."""

__version__ = "0.1.0"

from .harmonic import (
    BoundaryGrid,
    DiskFunction,
    cauchy_transform,
    fourier_coeffs,
    herglotz,
    log_diagnostic,
    outer_from_modulus,
    poisson_extend,
    riesz_project,
)
from .symbols import (
    DirichletSpace,
    MeasureSpec,
    RowSymbol,
    delta_boundary,
    dirichlet_norm,
    estimate_rank,
    gram_matrix,
    kernel_eval,
    weighted_space_symbol,
)
from .spectral import MatrixSymbol, factor_residual, matrix_outer_factor
from .model import ModelPair, SpaceHandle
from .analysis import (
    LimitSchedule,
    backward_iterates,
    bergman_dirichlet_unitary,
    cauchy_dual,
    dirichlet_reverse_carleson,
    mz_test,
    norm_identity_deviation,
    norm_limit_estimate,
    pointwise_defect,
    reverse_carleson,
    wandering_norm,
)
from .subspaces import (
    BlaschkeProduct,
    SubspaceBasis,
    intersect_model_space,
    model_space_basis,
    nearly_invariant_norm,
    poly_density_residual,
    shift_subspace_membership,
)
from .catalog import space_from_json, named_space

__all__ = [
    "BoundaryGrid",
    "DiskFunction",
    "cauchy_transform",
    "fourier_coeffs",
    "herglotz",
    "log_diagnostic",
    "outer_from_modulus",
    "poisson_extend",
    "riesz_project",
    "DirichletSpace",
    "MeasureSpec",
    "RowSymbol",
    "delta_boundary",
    "dirichlet_norm",
    "estimate_rank",
    "gram_matrix",
    "kernel_eval",
    "weighted_space_symbol",
    "MatrixSymbol",
    "factor_residual",
    "matrix_outer_factor",
    "ModelPair",
    "SpaceHandle",
    "LimitSchedule",
    "backward_iterates",
    "bergman_dirichlet_unitary",
    "cauchy_dual",
    "dirichlet_reverse_carleson",
    "mz_test",
    "norm_identity_deviation",
    "norm_limit_estimate",
    "pointwise_defect",
    "reverse_carleson",
    "wandering_norm",
    "BlaschkeProduct",
    "SubspaceBasis",
    "intersect_model_space",
    "model_space_basis",
    "nearly_invariant_norm",
    "poly_density_residual",
    "shift_subspace_membership",
    "space_from_json",
    "named_space",
    "__version__",
]
