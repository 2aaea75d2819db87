"""Wall-time benchmark of the K=2 multiset solver over a (rank, N) grid.

The grid mirrors a published CPU-time table for the same algorithm (an
i5 at 3.40 GHz running serial Matlab); those times are embedded purely
as an informational baseline for the ratio column. Timings depend on
hardware and are reported, never asserted. A separate helper measures
the speedup of the fully parallelizable candidate construction and
multiset scoring when partitioned across worker processes.
"""

import time
from dataclasses import dataclass

import numpy as np

from ._scan import _pool
from .candidates import cardinality_bound
from .solver_multi import solve_multi_poly

REFERENCE_SECONDS = {
    (3, 4): 0.0172, (3, 6): 0.0406, (3, 8): 0.0920,
    (3, 10): 0.1966, (3, 12): 0.3900, (3, 14): 0.7160,
    (4, 6): 0.0624, (4, 8): 0.3526, (4, 10): 1.4212,
    (4, 12): 4.5178, (4, 14): 11.8686,
    (5, 6): 0.1014, (5, 8): 0.8471, (5, 10): 5.4944,
    (5, 12): 26.3361, (5, 14): 99.4600,
    (6, 8): 1.2308, (6, 10): 12.2289, (6, 12): 87.1546,
    (6, 14): 471.2275,
}

BENCH_HEADER = (
    "d", "n", "k", "reps", "mean_seconds", "reference_seconds",
    "ratio_vs_reference", "candidates", "multisets",
)


def _grid_matrix(d, n, seed, rep):
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, d, n, rep))))
    return rng.standard_normal((d, n))


def bench_grid(k=2, reps=3, seed=0, workers=1, cells=None):
    """Time solve_multi_poly on full-rank d x N Gaussian matrices.

    Returns one row per grid cell following BENCH_HEADER.
    """
    rows = []
    for (d, n), reference in sorted(REFERENCE_SECONDS.items()):
        if cells is not None and (d, n) not in cells:
            continue
        elapsed = []
        multisets = 0
        for rep in range(reps):
            x = _grid_matrix(d, n, seed, rep)
            t0 = time.perf_counter()
            result = solve_multi_poly(x, k, workers=workers)
            elapsed.append(time.perf_counter() - t0)
            multisets = result.candidates_evaluated
        mean = float(np.mean(elapsed))
        rows.append([
            d, n, k, reps, mean, reference, mean / reference,
            cardinality_bound(n, d), multisets,
        ])
    return rows


@dataclass
class SpeedupReport:
    d: int
    n: int
    reps: int
    seconds_serial: float
    seconds_parallel: float
    workers: int

    @property
    def speedup(self):
        return self.seconds_serial / self.seconds_parallel


def bench_speedup(d=5, n=12, k=2, reps=20, workers=4, seed=0):
    """Wall-time ratio of 1-worker vs multi-worker solves on one grid cell.

    The worker pool is started (and one solve discarded) before timing so
    process startup is not billed to the parallel path; the remaining
    per-call overhead is part of the honest measurement.
    """
    x = _grid_matrix(d, n, seed, 0)
    _pool(workers)
    solve_multi_poly(x, k, workers=workers)  # warm the pool

    t0 = time.perf_counter()
    for _ in range(reps):
        solve_multi_poly(x, k, workers=1)
    serial = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(reps):
        solve_multi_poly(x, k, workers=workers)
    parallel = time.perf_counter() - t0

    return SpeedupReport(
        d=d, n=n, reps=reps,
        seconds_serial=serial, seconds_parallel=parallel, workers=workers,
    )
