"""Vectorized candidate scans with deterministic tie handling.

Winners are chosen by strict comparison, so the first candidate in
enumeration order wins exact ties regardless of chunking or worker
count. Candidates whose metric falls within TIE_RTOL (relative) of the
winner are counted for diagnostic purposes; the count saturates at
TIE_CAP in pathological all-tie inputs.

Sign vectors are enumerated by a canonical integer code: entry 0 is
pinned to +1 and bit g of the code sets entry g+1 to -1. Code order is
therefore lexicographic over entries with +1 ordered before -1.

Multisets of column indices are ranked colexicographically via the
combinatorial number system; scans may enumerate in any order because
ties are resolved by that rank.
"""

import atexit
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from math import comb

import numpy as np

TIE_RTOL = 1e-12
TIE_CAP = 65536
_CHUNK = 1 << 14

_POOLS = {}


def _pool(workers):
    """Reusable fork-based pool per worker count; amortizes process startup."""
    ex = _POOLS.get(workers)
    if ex is None:
        ctx = multiprocessing.get_context("fork")
        ex = ProcessPoolExecutor(max_workers=workers, mp_context=ctx)
        _POOLS[workers] = ex
    return ex


@atexit.register
def _shutdown_pools():
    for ex in _POOLS.values():
        ex.shutdown(wait=False, cancel_futures=True)
    _POOLS.clear()


def sign_block(n, start, stop):
    """Canonical sign vectors for codes [start, stop) as an N x (stop-start) array."""
    codes = np.arange(start, stop, dtype=np.uint64)
    block = np.ones((stop - start, n))
    if n > 1:
        bits = (codes[:, None] >> np.arange(n - 1, dtype=np.uint64)) & 1
        block[:, 1:] = 1.0 - 2.0 * bits
    return block.T


def multiset_rank(tup):
    """Colexicographic rank of a nondecreasing index tuple."""
    return sum(comb(z + k, k + 1) for k, z in enumerate(tup))


class _Tracker:
    """Running (metric, rank) best plus near-tie contender metrics."""

    def __init__(self):
        self.metric = -np.inf
        self.rank = -1
        self.contenders = []

    def offer(self, scores, ranks):
        """Fold in a chunk of scores; ranks maps chunk positions to global ranks."""
        cmax = float(scores.max())
        if cmax > self.metric:
            hits = np.flatnonzero(scores == cmax)
            self.metric = cmax
            self.rank = min(int(ranks(h)) for h in hits)
        elif cmax == self.metric:
            hits = np.flatnonzero(scores == cmax)
            self.rank = min(self.rank, min(int(ranks(h)) for h in hits))
        cutoff = self.metric * (1.0 - TIE_RTOL)
        near = scores[scores >= cutoff]
        if len(self.contenders) < TIE_CAP:
            self.contenders.extend(near[:TIE_CAP].tolist())
        self.contenders = [v for v in self.contenders if v >= cutoff][:TIE_CAP]

    def merge(self, other):
        if (other.metric, -other.rank) > (self.metric, -self.rank):
            self.metric, self.rank = other.metric, other.rank
        cutoff = self.metric * (1.0 - TIE_RTOL)
        pool = self.contenders + other.contenders
        self.contenders = [v for v in pool if v >= cutoff][:TIE_CAP]

    @property
    def ties(self):
        return max(0, len(self.contenders) - 1)


def _pool_map(fn, jobs, workers):
    if workers <= 1 or len(jobs) <= 1:
        return [fn(*j) for j in jobs]
    return list(_pool(workers).map(fn, *zip(*jobs)))


# ---------------------------------------------------------------- vectors

def _scan_codes_range(e, start, stop):
    n = e.shape[1]
    t = _Tracker()
    for a in range(start, stop, _CHUNK):
        b = min(a + _CHUNK, stop)
        scores = np.linalg.norm(e @ sign_block(n, a, b), axis=0)
        t.offer(scores, lambda h, a=a: a + h)
    return t


def scan_sign_codes(e, workers=1):
    """Best canonical sign vector code under score ||e @ b||_2.

    Returns (metric, code, ties, evaluated) over all 2^(N-1) codes.
    """
    n = e.shape[1]
    total = 1 << (n - 1)
    bounds = np.linspace(0, total, max(workers, 1) + 1).astype(int)
    jobs = [(e, int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if a < b]
    best = _Tracker()
    for t in _pool_map(_scan_codes_range, jobs, workers):
        best.merge(t)
    return best.metric, best.rank, best.ties, total


def _scan_columns_range(e, cols, start, stop):
    t = _Tracker()
    for a in range(start, stop, _CHUNK):
        b = min(a + _CHUNK, stop)
        scores = np.linalg.norm(e @ cols[:, a:b], axis=0)
        t.offer(scores, lambda h, a=a: a + h)
    return t


def scan_columns(e, cols, workers=1):
    """Best column of cols under score ||e @ col||_2; enumeration order = column order."""
    p = cols.shape[1]
    bounds = np.linspace(0, p, max(workers, 1) + 1).astype(int)
    jobs = [(e, cols, int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if a < b]
    best = _Tracker()
    for t in _pool_map(_scan_columns_range, jobs, workers):
        best.merge(t)
    return best.metric, best.rank, best.ties, p


# --------------------------------------------------------------- multisets

def _pair_scan_lastcols(u, gram_diag, last_cols):
    """Scan all pairs (i, j), i <= j, for each j in last_cols.

    Nuclear norm of a rank<=2 matrix with Gram [[gii, gij], [gij, gjj]] is
    sqrt(gii + gjj + 2 sqrt(gii gjj - gij^2)).
    """
    t = _Tracker()
    for j in last_cols:
        g = u[:, : j + 1].T @ u[:, j]
        det = np.clip(gram_diag[: j + 1] * gram_diag[j] - g * g, 0.0, None)
        scores = np.sqrt(gram_diag[: j + 1] + gram_diag[j] + 2.0 * np.sqrt(det))
        base = comb(j + 1, 2)
        t.offer(scores, lambda h, base=base: base + h)
    return t


def _multiset_scan_lastcols(u, k, last_cols):
    """General-K scan: batched singular values of the k-column selections."""
    from itertools import combinations_with_replacement

    t = _Tracker()
    for j in last_cols:
        tuples = [pre + (j,) for pre in combinations_with_replacement(range(j + 1), k - 1)]
        for a in range(0, len(tuples), _CHUNK):
            batch = tuples[a : a + _CHUNK]
            stack = u[:, np.asarray(batch)].transpose(1, 0, 2)
            scores = np.linalg.svd(stack, compute_uv=False).sum(axis=1)
            ranks = [multiset_rank(tup) for tup in batch]
            t.offer(scores, lambda h, ranks=ranks: ranks[h])
    return t


def unrank_multiset(rank, k):
    """Inverse of multiset_rank: the nondecreasing k-tuple with the given rank."""
    out = []
    for pos in range(k - 1, -1, -1):
        z = 0
        while comb(z + 1 + pos, pos + 1) <= rank:
            z += 1
        rank -= comb(z + pos, pos + 1)
        out.append(z)
    return tuple(reversed(out))


def scan_multisets(u, k, workers=1):
    """Best size-k column multiset of u under the nuclear-norm score.

    Returns (metric, tuple, ties, evaluated) where evaluated counts all
    C(P + k - 1, k) nondecreasing index tuples. Work is partitioned by
    the last (largest) index; ties resolve by colexicographic rank, so
    the result does not depend on the partition.
    """
    p = u.shape[1]
    total = comb(p + k - 1, k)
    gram_diag = np.einsum("ij,ij->j", u, u)
    stripes = [list(range(w, p, max(workers, 1))) for w in range(max(workers, 1))]
    stripes = [s for s in stripes if s]
    if k == 2:
        jobs = [(u, gram_diag, s) for s in stripes]
        results = _pool_map(_pair_scan_lastcols, jobs, workers)
    else:
        jobs = [(u, k, s) for s in stripes]
        results = _pool_map(_multiset_scan_lastcols, jobs, workers)
    best = _Tracker()
    for t in results:
        best.merge(t)
    return best.metric, unrank_multiset(best.rank, k), best.ties, total
