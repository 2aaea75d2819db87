"""Single L1-norm principal component: the unit vector r maximizing
``sum_n |x_n^T r|``.

The maximizer is ``X b / ||X b||_2`` for the sign vector b maximizing
``||X b||_2``, and the attained L1 metric equals that maximal 2-norm.
Four interchangeable strategies find b: plain exhaustive search over the
canonical half of {+-1}^N, closed forms for rank-1 and rank-2 data, and
the candidate-set enumeration that is polynomial in N for fixed rank.
"""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from . import _scan
from .candidates import canonicalize, cardinality_bound, compute_candidates
from .numerics import (
    DEFAULT_RANK_TOL,
    BudgetError,
    RankError,
    check_matrix,
    eigen_basis,
    sign,
)

if TYPE_CHECKING:
    from .heuristics import IterationTrace

DEFAULT_BUDGET = 1 << 24

STRATEGIES = ("auto", "exhaustive", "rank1", "rank2", "poly", "approx")


@dataclass
class SolveResult:
    """Outcome of an L1 subspace computation.

    ``basis`` is the orthonormal D x K subspace matrix, ``signs`` the
    canonical optimal sign vector (K = 1) or sign matrix, and ``metric``
    the attained value of the L1 projection objective. ``ties`` counts
    further candidates whose metric fell within 1e-12 relative of the
    winner. Heuristic and approximate strategies set ``exact`` False and
    may attach an IterationTrace.
    """

    basis: np.ndarray
    signs: np.ndarray
    metric: float
    method: str
    candidates_evaluated: int
    ties: int = 0
    exact: bool = True
    trace: "IterationTrace | None" = field(default=None, repr=False)

    @property
    def k(self):
        return self.basis.shape[1]


def metric_l1(x, r):
    """L1 projection metric: sum of |entries| of X^T R."""
    x = np.asarray(x, dtype=float)
    return float(np.abs(x.T @ r).sum())


def result_from_signs(x, b, method, evaluated, ties=0, exact=True, trace=None):
    """Assemble a K = 1 SolveResult from a sign vector.

    For exact solves the attained L1 metric equals ||X b||_2; suboptimal
    sign patterns only bound it from below, so approximate results
    recompute the direction's actual L1 projection value.
    """
    b = canonicalize(b)
    v = x @ b
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise RankError("sign pattern maps the data to zero; rank contract violated")
    basis = (v / norm)[:, None]
    return SolveResult(
        basis=basis,
        signs=b,
        metric=norm if exact else metric_l1(x, basis),
        method=method,
        candidates_evaluated=evaluated,
        ties=ties,
        exact=exact,
        trace=trace,
    )


def _eval_operator(x, rank_tol):
    """Score ||X b||_2 through Q^T b when that is the smaller operator."""
    d_dim, n = x.shape
    if n < d_dim:
        return eigen_basis(x, rank_tol).q.T
    return x


def solve_exhaustive(x, rank_tol=DEFAULT_RANK_TOL, budget=DEFAULT_BUDGET, workers=1):
    """Optimal component by scoring all 2^(N-1) canonical sign vectors.

    Refuses with BudgetError when the sweep would exceed ``budget``
    evaluations; use solve_poly instead for long records.
    """
    x = check_matrix(x)
    n = x.shape[1]
    count = 1 << (n - 1)
    if count > budget:
        raise BudgetError(
            f"exhaustive sweep needs {count} evaluations (budget {budget}); "
            "use solve_poly"
        )
    e = _eval_operator(x, rank_tol)
    _, code, ties, evaluated = _scan.scan_sign_codes(e, workers=workers)
    b = _scan.sign_block(n, code, code + 1)[:, 0]
    return result_from_signs(x, b, "exhaustive", evaluated, ties)


def solve_rank1(x, rank_tol=DEFAULT_RANK_TOL):
    """Closed form for rank-1 data: b = sign(q1), linear in N."""
    x = check_matrix(x)
    eb = eigen_basis(x, rank_tol)
    if eb.rank != 1:
        raise RankError(f"solve_rank1 requires numerical rank 1, got {eb.rank}")
    return result_from_signs(x, sign(eb.q[:, 0]), "rank1", 1)


def solve_rank1_approx(x, rank_tol=DEFAULT_RANK_TOL):
    """Quantize the dominant eigenvector of X^T X: cheap, exact only at rank 1.

    The returned metric never exceeds the optimum, so the result is
    flagged approximate.
    """
    x = check_matrix(x)
    eb = eigen_basis(x, rank_tol)
    return result_from_signs(x, sign(eb.q[:, 0]), "approx", 1, exact=eb.rank == 1)


def solve_rank2(x, rank_tol=DEFAULT_RANK_TOL):
    """Optimal component for rank-2 data in O(N log N).

    Writes the two eigenbasis columns as one complex vector z and walks
    the N angles in [-pi/2, pi/2) where some sign of Re(z e^{-j phi})
    flips, flipping one entry at a time; the optimum is among the N
    visited sign vectors. The walk updates the squared metric
    incrementally (rank-2 Gram update per flip), keeping the sweep
    linear after the sort.
    """
    x = check_matrix(x)
    eb = eigen_basis(x, rank_tol)
    if eb.rank != 2:
        raise RankError(f"solve_rank2 requires numerical rank 2, got {eb.rank}")
    q1, q2 = eb.q[:, 0], eb.q[:, 1]
    z = q1 + 1j * q2
    n = len(z)

    # Sign of entry n flips where phi = angle(z_n) + pi/2 (mod pi).
    flips = np.mod(np.angle(z) + np.pi, np.pi) - np.pi / 2.0
    order = np.argsort(flips, kind="stable")
    sorted_flips = flips[order]
    # Seed strictly inside the cell that precedes the smallest flip angle.
    phi0 = 0.5 * (sorted_flips[0] + sorted_flips[-1] - np.pi)
    b = sign(np.real(z * np.exp(-1j * phi0)))

    s1, s2 = q1 @ b, q2 @ b
    metrics = np.empty(n)
    metrics[0] = s1 * s1 + s2 * s2
    candidates = [b.copy()]
    for step in range(n - 1):
        i = order[step]
        s1 -= 2.0 * q1[i] * b[i]
        s2 -= 2.0 * q2[i] * b[i]
        b[i] = -b[i]
        metrics[step + 1] = s1 * s1 + s2 * s2
        candidates.append(b.copy())

    metrics = np.sqrt(np.maximum(metrics, 0.0))
    best = int(np.argmax(metrics))
    ties = int(np.sum(metrics >= metrics[best] * (1.0 - _scan.TIE_RTOL))) - 1
    return result_from_signs(x, candidates[best], "rank2", n, ties)


def solve_poly(x, rank_tol=DEFAULT_RANK_TOL, workers=1):
    """Optimal component via the candidate set, O(N^rank) for fixed rank.

    Optimality is guaranteed for data in general position; inputs with
    exact sign ties (duplicated samples, small-integer grids) may need
    solve_exhaustive instead — see the candidates module.
    """
    x = check_matrix(x)
    eb = eigen_basis(x, rank_tol)
    cand = compute_candidates(eb.q, rank_tol, workers=workers)
    e = x if x.shape[0] <= x.shape[1] else eb.q.T
    _, idx, ties, evaluated = _scan.scan_columns(e, cand.columns, workers=workers)
    return result_from_signs(x, cand.columns[:, idx], "poly", evaluated, ties)


def solve(
    x,
    strategy="auto",
    rank_tol=DEFAULT_RANK_TOL,
    budget=DEFAULT_BUDGET,
    workers=1,
):
    """Compute the L1 principal component with the requested strategy.

    ``auto`` picks the closed forms at rank 1 and 2 and otherwise the
    cheaper of the exhaustive sweep (2^(N-1) candidates) and the
    candidate enumeration (sum_{g<rank} C(N-1, g) candidates); the
    exhaustive sweep wins ties, which covers the N <= rank regime where
    the two candidate counts coincide.
    """
    x = check_matrix(x)
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if strategy == "exhaustive":
        return solve_exhaustive(x, rank_tol, budget, workers)
    if strategy == "rank1":
        return solve_rank1(x, rank_tol)
    if strategy == "rank2":
        return solve_rank2(x, rank_tol)
    if strategy == "poly":
        return solve_poly(x, rank_tol, workers)
    if strategy == "approx":
        return solve_rank1_approx(x, rank_tol)

    d = eigen_basis(x, rank_tol).rank
    if d == 1:
        return solve_rank1(x, rank_tol)
    if d == 2:
        return solve_rank2(x, rank_tol)
    n = x.shape[1]
    if (1 << (n - 1)) <= min(cardinality_bound(n, d), budget):
        return solve_exhaustive(x, rank_tol, budget, workers)
    return solve_poly(x, rank_tol, workers)
