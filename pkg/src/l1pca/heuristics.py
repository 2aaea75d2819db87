"""Suboptimal fixed-point baselines for the L1 projection objective.

These are the classical iterations the exact solvers are compared
against. Their metric ascends at every step and the sign patterns live
in a finite set, so each run either reaches a fixed point or enters an
equal-metric cycle; cycles are detected by a metric plateau (two
consecutive equal values within 1e-12 relative) rather than by hashing
visited states, keeping memory bounded. Neither iteration is guaranteed
to reach the global optimum, so all results are flagged approximate.
"""

from dataclasses import dataclass

import numpy as np

from .numerics import (
    DEFAULT_RANK_TOL,
    RankError,
    check_matrix,
    compact_svd,
    eigen_basis,
    procrustes,
    sign,
)

PLATEAU_RTOL = 1e-12


@dataclass
class IterationTrace:
    """Per-iteration metric values of a fixed-point run."""

    metrics: np.ndarray
    iterations: int
    converged: bool


def _check_signs(b, n):
    b = np.asarray(b, dtype=float)
    if b.shape != (n,) or not np.all(np.abs(b) == 1.0):
        raise ValueError("initial sign vector must be length N over {-1, +1}")
    return b.copy()


def fixed_point_single(
    x, b0=None, max_iter=1000, rank_tol=DEFAULT_RANK_TOL, restarts=0, seed=0
):
    """Iterate b <- sign(X^T X b) until the sign pattern stabilizes.

    Defaults b0 to sign(q1), the quantized dominant eigenvector, for
    deterministic behavior. ``restarts`` adds that many extra runs from
    seeded random sign starts; the best final metric wins (the default
    start wins ties). Returns the solution with its IterationTrace
    attached.
    """
    from .solver_single import result_from_signs

    x = check_matrix(x)
    n = x.shape[1]
    if restarts:
        rng = np.random.default_rng(seed)
        best = fixed_point_single(x, b0, max_iter, rank_tol)
        for _ in range(restarts):
            start = np.where(rng.random(n) < 0.5, -1.0, 1.0)
            trial = fixed_point_single(x, start, max_iter, rank_tol)
            if trial.metric > best.metric:
                best = trial
        return best
    if b0 is None:
        b = sign(eigen_basis(x, rank_tol).q[:, 0])
    else:
        b = _check_signs(b0, n)

    metrics = [float(np.linalg.norm(x @ b))]
    converged = False
    iterations = 0
    for _ in range(max_iter):
        iterations += 1
        b_next = sign(x.T @ (x @ b))
        if np.array_equal(b_next, b):
            converged = True
            break
        m_next = float(np.linalg.norm(x @ b_next))
        metrics.append(m_next)
        b = b_next
        if abs(m_next - metrics[-2]) <= PLATEAU_RTOL * max(m_next, metrics[-2]):
            converged = True  # equal-metric cycle; the iteration has stalled
            break

    trace = IterationTrace(np.asarray(metrics), iterations, converged)
    return result_from_signs(
        x, b, "fixedpoint", iterations, exact=False, trace=trace
    )


def fixed_point_multi(x, k, r0=None, max_iter=1000, rank_tol=DEFAULT_RANK_TOL):
    """Alternate B <- sign(X^T R) with the Procrustes update R <- U V^T of X B.

    R0 defaults to the K dominant left singular vectors of X. For K = 1
    this reproduces the single-component iteration trajectory.
    """
    from .solver_multi import _finish_multi
    from .solver_single import metric_l1

    x = check_matrix(x)
    if r0 is None:
        f = compact_svd(x, rank_tol)
        if f.rank < k:
            raise RankError(f"need K <= rank for the default start; rank={f.rank}")
        r = f.u[:, :k]
    else:
        r = np.asarray(r0, dtype=float).reshape(x.shape[0], k)
        if not np.allclose(r.T @ r, np.eye(k), atol=1e-8):
            raise ValueError("R0 must have orthonormal columns")

    b = sign(x.T @ r)
    r = procrustes(x @ b)
    metrics = [metric_l1(x, r)]
    converged = False
    iterations = 1
    for _ in range(max_iter - 1):
        iterations += 1
        b_next = sign(x.T @ r)
        if np.array_equal(b_next, b):
            converged = True
            break
        b = b_next
        r = procrustes(x @ b)
        metrics.append(metric_l1(x, r))
        if abs(metrics[-1] - metrics[-2]) <= PLATEAU_RTOL * max(metrics[-1], metrics[-2]):
            converged = True
            break

    trace = IterationTrace(np.asarray(metrics), iterations, converged)
    result = _finish_multi(x, b, "fixedpoint", iterations, ties=0)
    result.metric = metric_l1(x, result.basis)
    result.exact = False
    result.trace = trace
    return result


def greedy_deflation(x, k, max_iter=1000, rank_tol=DEFAULT_RANK_TOL):
    """Sequential components: fixed point, project onto the complement, repeat.

    The stacked components are orthonormal by construction; a final QR
    pass only removes accumulated round-off.
    """
    from .solver_single import SolveResult, metric_l1

    x = check_matrix(x)
    d = eigen_basis(x, rank_tol).rank
    if not 1 <= k <= d:
        raise RankError(f"need 1 <= K <= rank; got K={k}, rank={d}")

    deflated = x.copy()
    columns = []
    for _ in range(k):
        step = fixed_point_single(deflated, max_iter=max_iter, rank_tol=rank_tol)
        r = step.basis[:, 0]
        columns.append(r)
        deflated = deflated - np.outer(r, r) @ deflated
    basis = np.stack(columns, axis=1)
    q, rr = np.linalg.qr(basis)
    basis = q * sign(np.diag(rr))

    return SolveResult(
        basis=basis,
        signs=sign(x.T @ basis),
        metric=metric_l1(x, basis),
        method="greedy",
        candidates_evaluated=k,
        exact=False,
    )
