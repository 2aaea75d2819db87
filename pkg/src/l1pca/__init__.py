"""Exact L1-norm principal components and subspaces of real data matrices.

The library computes the unit direction (or orthonormal K-dimensional
basis) maximizing the sum of absolute projections of the data samples,
which is markedly less sensitive to outlying samples than the familiar
L2/SVD subspace. Exact solvers, fixed-point baselines, and reproducible
robustness experiments are exposed both as a library and through the
``l1pca`` command line tool.
"""

from .candidates import (
    CandidateSet,
    canonicalize,
    cardinality_bound,
    compute_candidates,
)
from .heuristics import (
    IterationTrace,
    fixed_point_multi,
    fixed_point_single,
    greedy_deflation,
)
from .numerics import (
    BudgetError,
    EigenBasis,
    RankError,
    SVDFactors,
    ZeroRankError,
    compact_svd,
    eigen_basis,
    nuclear_norm,
    null_space_vector,
    procrustes,
    sign,
)
from .solver_multi import (
    solve_multi,
    solve_multi_exhaustive,
    solve_multi_poly,
    subspace_from_signs,
)
from .solver_single import (
    SolveResult,
    metric_l1,
    solve,
    solve_exhaustive,
    solve_poly,
    solve_rank1,
    solve_rank1_approx,
    solve_rank2,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "CandidateSet",
    "EigenBasis",
    "IterationTrace",
    "RankError",
    "SVDFactors",
    "SolveResult",
    "ZeroRankError",
    "canonicalize",
    "cardinality_bound",
    "compact_svd",
    "compute_candidates",
    "eigen_basis",
    "fixed_point_multi",
    "fixed_point_single",
    "greedy_deflation",
    "metric_l1",
    "nuclear_norm",
    "null_space_vector",
    "procrustes",
    "sign",
    "solve",
    "solve_exhaustive",
    "solve_multi",
    "solve_multi_exhaustive",
    "solve_multi_poly",
    "solve_poly",
    "solve_rank1",
    "solve_rank1_approx",
    "solve_rank2",
    "subspace_from_signs",
]
