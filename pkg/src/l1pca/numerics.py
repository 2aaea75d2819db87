"""Dense linear-algebra primitives shared by all solvers.

Everything here is a pure function of its arguments; nothing caches or
mutates, so callers may invoke these concurrently without coordination.
Rank decisions are made relative to the largest singular value of the
operand (default threshold 1e-10).
"""

from dataclasses import dataclass

import numpy as np

DEFAULT_RANK_TOL = 1e-10


class ZeroRankError(ValueError):
    """The operand is (numerically) the zero matrix."""


class RankError(ValueError):
    """The operand's numerical rank violates the operation's contract."""


class BudgetError(RuntimeError):
    """An enumeration would exceed the configured evaluation budget."""


def check_matrix(x, name="matrix"):
    """Validate and return a dense 2-D float array with finite entries."""
    a = np.asarray(x, dtype=float)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"{name} must be 2-D with at least one row and column")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def sign(x):
    """Binary sign: +1 for x >= 0, -1 for x < 0 (elementwise on arrays).

    The convention sign(0) = +1 is fixed so that degenerate inputs still
    produce valid {-1, +1} patterns.
    """
    return np.where(np.asarray(x, dtype=float) >= 0.0, 1.0, -1.0)[()]


@dataclass
class SVDFactors:
    """Compact SVD ``M = u @ diag(s) @ v.T`` truncated at numerical rank."""

    u: np.ndarray  # D x d, orthonormal columns
    s: np.ndarray  # d positive singular values, nonincreasing
    v: np.ndarray  # N x d, orthonormal columns
    rank: int


@dataclass
class EigenBasis:
    """Factor q (N x d) with ``X^T X = q @ q.T``.

    Columns are the eigenvalue-weighted eigenvectors of X^T X restricted
    to nonzero eigenvalues; squared column norms are those eigenvalues.
    """

    q: np.ndarray
    rank: int


def compact_svd(m, rank_tol=DEFAULT_RANK_TOL):
    """Compact SVD keeping singular values above rank_tol * s_max.

    Raises ZeroRankError for an all-zero matrix.
    """
    a = check_matrix(m)
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    if s[0] == 0.0:
        raise ZeroRankError("zero matrix has no compact SVD")
    d = int(np.sum(s > rank_tol * s[0]))
    return SVDFactors(u=u[:, :d], s=s[:d], v=vt[:d].T, rank=d)


def eigen_basis(x, rank_tol=DEFAULT_RANK_TOL):
    """Eigenvalue-weighted eigenbasis q of X^T X, from the SVD of X.

    With X = U S V^T, q = V diag(S), so q q^T = V S^2 V^T = X^T X.
    """
    f = compact_svd(x, rank_tol)
    return EigenBasis(q=f.v * f.s, rank=f.rank)


def null_space_vector(m, rank_tol=DEFAULT_RANK_TOL):
    """Unit vector spanning the null space of an (m-1) x m matrix.

    Returns None when the matrix is row-rank deficient (null space of
    dimension >= 2), which callers treat as a normal skip condition, not
    an error.
    """
    a = np.atleast_2d(np.asarray(m, dtype=float))
    rows, cols = a.shape
    if cols != rows + 1 or cols < 2:
        raise ValueError("expected an (m-1) x m matrix with m >= 2")
    _, s, vt = np.linalg.svd(a)
    if s[0] == 0.0 or s[-1] < rank_tol * s[0]:
        return None
    return vt[-1]


def nuclear_norm(m):
    """Sum of the singular values of m."""
    a = check_matrix(m)
    return float(np.linalg.svd(a, compute_uv=False).sum())


def procrustes(a):
    """Orthonormal D x K matrix R maximizing trace(R^T a).

    R = U V^T from the SVD of a; the attained trace equals the nuclear
    norm of a. When rank(a) < K the surplus directions of U returned by
    the SVD are an orthonormal complement of a's column space, so R is
    still orthonormal and the projector R R^T acts identically on that
    column space.
    """
    a = check_matrix(a)
    d, k = a.shape
    if k > d:
        raise ValueError("need K <= D for an orthonormal D x K basis")
    u, _, vt = np.linalg.svd(a, full_matrices=False)
    return u @ vt
