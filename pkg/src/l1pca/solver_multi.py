"""Joint computation of K > 1 L1-norm principal components.

The K-component objective ``||X^T R||_1`` over orthonormal R is
maximized by R = U V^T from the SVD of X B_opt, where B_opt maximizes
the nuclear norm ||X B||_* over N x K sign matrices; the attained
metric equals that nuclear norm. B_opt is found either by exhaustive
search over canonical sign matrices or by scanning size-K multisets of
the single-component candidate set, which is polynomial in N for fixed
rank.

The nuclear norm is invariant under column permutations and per-column
negations of B, so searches enumerate only matrices whose columns are
canonical (first entry +1) and lexicographically nondecreasing.
"""

from math import comb

import numpy as np

from . import _scan
from .candidates import canonicalize, cardinality_bound, compute_candidates
from .numerics import (
    DEFAULT_RANK_TOL,
    BudgetError,
    RankError,
    check_matrix,
    eigen_basis,
    nuclear_norm,
    procrustes,
)
from .solver_single import DEFAULT_BUDGET, SolveResult, solve

MULTI_STRATEGIES = ("auto", "exhaustive", "poly")


def subspace_from_signs(x, b):
    """Orthonormal D x K basis R = U V^T from the SVD of X B.

    trace(R^T X B) equals ||X B||_*, which makes R the L1-optimal
    subspace whenever B is the optimal sign matrix.
    """
    x = check_matrix(x)
    b = np.asarray(b, dtype=float)
    if b.ndim == 1:
        b = b[:, None]
    return procrustes(x @ b)


def _canonical_sign_matrix(b):
    """Canonicalize columns and sort them lexicographically (+1 before -1)."""
    cols = [canonicalize(b[:, j]) for j in range(b.shape[1])]
    cols.sort(key=lambda c: (c < 0).tobytes())
    return np.stack(cols, axis=1)


def _finish_multi(x, b, method, evaluated, ties):
    b = _canonical_sign_matrix(b)
    r = subspace_from_signs(x, b)
    return SolveResult(
        basis=r,
        signs=b,
        metric=nuclear_norm(x @ b),
        method=method,
        candidates_evaluated=evaluated,
        ties=ties,
    )


def _nuclear_operator(x, eb):
    """X B and Q^T B share singular values; score through the smaller one."""
    return x if x.shape[0] <= eb.q.shape[1] else eb.q.T


def solve_multi_exhaustive(
    x, k, rank_tol=DEFAULT_RANK_TOL, budget=DEFAULT_BUDGET, workers=1
):
    """Optimal K components by exhaustive nuclear-norm search.

    Enumerates the C(2^(N-1) + K - 1, K) canonical sign matrices; refuses
    with BudgetError when that exceeds ``budget``.
    """
    x = check_matrix(x)
    n = x.shape[1]
    eb = eigen_basis(x, rank_tol)
    if not 1 <= k <= eb.rank:
        raise RankError(f"need 1 <= K <= rank; got K={k}, rank={eb.rank}")
    count = comb((1 << (n - 1)) + k - 1, k)
    if count > budget:
        raise BudgetError(
            f"exhaustive search needs {count} evaluations (budget {budget}); "
            "use solve_multi_poly"
        )
    cols = _scan.sign_block(n, 0, 1 << (n - 1))
    u = _nuclear_operator(x, eb) @ cols
    _, tup, ties, evaluated = _scan.scan_multisets(u, k, workers=workers)
    return _finish_multi(x, cols[:, list(tup)], "exhaustive", evaluated, ties)


def solve_multi_poly(x, k, rank_tol=DEFAULT_RANK_TOL, workers=1):
    """Optimal K components by scanning multisets of the candidate set.

    Builds the single-component candidate set once, then scores every
    nondecreasing index K-tuple by the nuclear norm, O(N^(rank*K - K + 1))
    for fixed rank. As with solve_poly, optimality requires data in
    general position; tie-heavy inputs should use the exhaustive search.
    """
    x = check_matrix(x)
    eb = eigen_basis(x, rank_tol)
    if not 1 <= k <= eb.rank:
        raise RankError(f"need 1 <= K <= rank; got K={k}, rank={eb.rank}")
    cand = compute_candidates(eb.q, rank_tol, workers=workers)
    u = _nuclear_operator(x, eb) @ cand.columns
    _, tup, ties, evaluated = _scan.scan_multisets(u, k, workers=workers)
    return _finish_multi(x, cand.columns[:, list(tup)], "poly", evaluated, ties)


def solve_multi(
    x,
    k,
    strategy="auto",
    rank_tol=DEFAULT_RANK_TOL,
    budget=DEFAULT_BUDGET,
    workers=1,
):
    """Compute K joint L1 components; K = 1 delegates to the single solver.

    ``auto`` compares the exhaustive candidate count 2^(NK-1) against the
    multiset scan cost C(P1 + K - 1, K) * rank * K^2 (P1 the generic
    candidate-set size) and picks the cheaper route.
    """
    x = check_matrix(x)
    if k < 1:
        raise RankError(f"need K >= 1, got {k}")
    if strategy not in MULTI_STRATEGIES:
        raise ValueError(
            f"unknown strategy {strategy!r}; expected one of {MULTI_STRATEGIES}"
        )
    if k == 1:
        single = {"auto": "auto", "exhaustive": "exhaustive", "poly": "poly"}[strategy]
        return solve(x, single, rank_tol, budget, workers)
    if strategy == "exhaustive":
        return solve_multi_exhaustive(x, k, rank_tol, budget, workers)
    if strategy == "poly":
        return solve_multi_poly(x, k, rank_tol, workers)

    n = x.shape[1]
    d = eigen_basis(x, rank_tol).rank
    exhaustive_cost = 1 << (n * k - 1)
    poly_cost = comb(cardinality_bound(n, d) + k - 1, k) * d * k * k
    if exhaustive_cost <= poly_cost:
        if comb((1 << (n - 1)) + k - 1, k) <= budget:
            return solve_multi_exhaustive(x, k, rank_tol, budget, workers)
    return solve_multi_poly(x, k, rank_tol, workers)
