"""Candidate sign-vector construction for the polynomial-time solvers.

The optimal sign pattern for an N-sample, rank-d data matrix lies in a
finite set of at most sum_{g<d} C(N-1, g) candidates, one per cell of
the hyperplane arrangement cut out by the rows of the eigenbasis q.
``compute_candidates`` enumerates the cells by visiting the arrangement
vertices: each (d-1)-subset of rows pins a one-dimensional null space
whose sign image is a candidate, with the subset's own (ambiguous)
entries resolved through the reduced null space one dimension down.
The recursion then drops the last two columns and repeats, bottoming
out in the closed-form one- and two-column cases.

Completeness holds for data in general position (continuous samples hit
it with probability one). Inputs with exact sign ties — duplicated or
negated samples, small-integer grids — can place further samples
exactly on a visited vertex; the one-sided tie resolution may then drop
cell patterns, so the optimum is no longer guaranteed to be in the set.
Such events are counted in ``ambiguous_entries``; when that counter is
nonzero, exact results require the exhaustive strategies.
"""

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from ._scan import _pool_map
from .numerics import DEFAULT_RANK_TOL, check_matrix, null_space_vector, sign


@dataclass
class CandidateSet:
    """Deduplicated, canonicalized candidate sign vectors, one per column.

    ``skipped_subsets`` counts row subsets ignored because their block was
    rank deficient; ``degenerate_rows`` counts all-zero rows of q whose
    entries were pinned to +1 by the sign convention;
    ``ambiguous_entries`` counts sign decisions taken at an exact tie
    (sample on a visited vertex) — nonzero means the input is not in
    general position and set completeness is not guaranteed.
    """

    columns: np.ndarray  # N x P, entries +-1
    source_rank: int
    sample_count: int
    skipped_subsets: int = 0
    degenerate_rows: int = 0
    ambiguous_entries: int = 0

    def __len__(self):
        return self.columns.shape[1]


def canonicalize(b):
    """Map b to its sign class representative with first entry +1."""
    b = np.asarray(b, dtype=float)
    if b.size == 0:
        raise ValueError("empty sign vector")
    return -b if b[0] < 0 else b.copy()


def cardinality_bound(n, d):
    """Candidate count for a generic N x d eigenbasis: sum_{g<d} C(N-1, g)."""
    return sum(comb(n - 1, g) for g in range(min(d, n)))


def _row_subsets(n, k):
    # Module-level so tests can monkeypatch the visitation order.
    return itertools.combinations(range(n), k)


def _vertex_candidates(q, m, rank_tol, start, stop):
    """Candidates from the lexicographic row subsets [start, stop) of level m.

    Each (m-1)-subset of rows pins a null-space vertex whose sign image
    is one candidate; the subset's own entries sit on the vertex
    (q_row . c = 0) and are fixed through the reduced system with that
    row removed and the last column dropped. Subsets whose row block is
    rank deficient generate no cell and are skipped.
    """
    n = q.shape[0]
    out, skipped, ambiguous = [], 0, 0
    row_norms = np.linalg.norm(q[:, :m], axis=1)
    subsets = itertools.islice(_row_subsets(n, m - 1), start, stop)
    for subset in subsets:
        rows = list(subset)
        c = null_space_vector(q[rows, :m], rank_tol)
        if c is None:
            skipped += 1
            continue
        c = sign(c[-1]) * c
        projections = q[:, :m] @ c
        # Rows outside the subset landing on this vertex are exact ties.
        on_vertex = int(np.sum(np.abs(projections) <= rank_tol * row_norms))
        ambiguous += max(0, on_vertex - (m - 1))
        b = sign(projections)
        for j in range(m - 1):
            reduced = q[rows[:j] + rows[j + 1 :], : m - 1]
            cr = null_space_vector(reduced, rank_tol)
            if cr is None:
                # Non-generic reduced block: the entry keeps the +1
                # assigned by the sign convention above.
                continue
            cr = sign(cr[-1]) * cr
            b[rows[j]] = sign(q[rows[j], : m - 1] @ cr)
        out.append(b)
    return out, skipped, ambiguous


def _base_candidates(q, m, rank_tol):
    """Closed-form level m <= 2: one candidate per row, or sign(q1) at m = 1."""
    n = q.shape[0]
    out, skipped, ambiguous = [], 0, 0
    if m == 2:
        row_norms = np.linalg.norm(q[:, :2], axis=1)
        for i in range(n):
            c = null_space_vector(q[i : i + 1, :2], rank_tol)
            if c is None:
                skipped += 1
                continue
            c = sign(c[-1]) * c
            projections = q[:, :2] @ c
            on_vertex = int(np.sum(np.abs(projections) <= rank_tol * row_norms))
            ambiguous += max(0, on_vertex - 1)
            b = sign(projections)
            b[i] = sign(q[i, 0])
            out.append(b)
    else:
        out.append(sign(q[:, 0]))
    return out, skipped, ambiguous


def compute_candidates(q, rank_tol=DEFAULT_RANK_TOL, workers=1):
    """Candidate sign vectors for the eigenbasis block q (N x m).

    The recursion over column blocks (m, m-2, ...) is unrolled level by
    level: vertex-derived candidates come before the recursive ones, and
    row subsets are visited lexicographically. Set content is
    independent of both orders, which are fixed only so enumeration
    counters reproduce; subsets may therefore be partitioned across
    workers and merged. Columns are canonicalized and deduplicated,
    keeping first occurrences.
    """
    q = check_matrix(q, "eigenbasis")
    n, m = q.shape
    row_scale = np.abs(q).max(axis=1)
    degenerate = int(np.sum(row_scale <= rank_tol * row_scale.max()))

    raw, skipped, ambiguous = [], 0, 0
    level = m
    while level > 2:
        total = comb(n, level - 1)
        bounds = np.linspace(0, total, max(workers, 1) + 1).astype(int)
        jobs = [
            (q, level, rank_tol, int(a), int(b))
            for a, b in zip(bounds[:-1], bounds[1:])
            if a < b
        ]
        for cols, skip, amb in _pool_map(_vertex_candidates, jobs, workers):
            raw.extend(cols)
            skipped += skip
            ambiguous += amb
        level -= 2
    cols, skip, amb = _base_candidates(q, level, rank_tol)
    raw.extend(cols)
    skipped += skip
    ambiguous += amb

    out, seen = [], set()
    for b in raw:
        b = canonicalize(b)
        key = b.astype(np.int8).tobytes()
        if key not in seen:
            seen.add(key)
            out.append(b)
    return CandidateSet(
        columns=np.stack(out, axis=1),
        source_rank=m,
        sample_count=n,
        skipped_subsets=skipped,
        degenerate_rows=degenerate,
        ambiguous_entries=ambiguous,
    )
