"""Dimensionality-reduction robustness sweep.

Two-dimensional training sets mixing nominal Gaussian samples with a
cluster of far-away outliers are reduced to a single direction by L2
(dominant singular vector) and by the exact L1 solver; the directions
are then scored by mean square fit error on fresh nominal data. The
sweep varies the number of outliers among the fixed number of training
points and reports, per outlier count, the trial-averaged errors and
the fraction of trials in which the L1 direction fit strictly better.
"""

from dataclasses import dataclass, field

import numpy as np

from ..numerics import compact_svd
from ..solver_single import solve
from ._report import rows_to_text, write_csv
from ._rng import derive_rng

NOMINAL_COV = np.array([[15.0, 13.0], [13.0, 26.0]])
OUTLIER_MEAN = np.array([20.0, -20.0])
OUTLIER_COV = np.array([[5.73, -4.494], [-4.494, 5.27]])

_NOMINAL_CHOL = np.linalg.cholesky(NOMINAL_COV)
_OUTLIER_CHOL = np.linalg.cholesky(OUTLIER_COV)


def gen_nominal_gaussian(n, rng):
    """N zero-mean nominal samples as a 2 x N matrix; deterministic per seed."""
    rng = np.random.default_rng(rng)
    return _NOMINAL_CHOL @ rng.standard_normal((2, n))


def gen_outliers(n_out, rng):
    """N_out outlier samples as a 2 x N_out matrix (empty for N_out = 0)."""
    rng = np.random.default_rng(rng)
    return OUTLIER_MEAN[:, None] + _OUTLIER_CHOL @ rng.standard_normal((2, n_out))


def mean_square_fit_error(r, points):
    """Average squared residual of the columns of points after projection on span(r)."""
    r = np.asarray(r, dtype=float)
    if r.ndim == 1:
        r = r[:, None]
    residual = points - r @ (r.T @ points)
    return float(np.mean(np.sum(residual**2, axis=0)))


@dataclass
class DimredConfig:
    seed: int = 0
    trials: int = 10_000
    train_points: int = 20
    eval_points: int = 1000
    n_out_values: tuple = field(default_factory=lambda: tuple(range(21)))


@dataclass
class DimredReport:
    header = (
        "n_out",
        "trials",
        "mse_l2_mean",
        "mse_l1_mean",
        "mse_l2_se",
        "mse_l1_se",
        "l1_win_fraction",
        "win_ci_low",
        "win_ci_high",
    )
    rows: list

    def win_fraction(self, n_out):
        for row in self.rows:
            if row[0] == n_out:
                return row[6]
        raise KeyError(n_out)

    def mse_means(self, n_out):
        for row in self.rows:
            if row[0] == n_out:
                return row[2], row[3]
        raise KeyError(n_out)

    def to_csv(self, path):
        write_csv(path, self.header, self.rows)

    def text(self):
        return rows_to_text(self.header, self.rows)


def _dimred_trial(config, n_out, trial):
    """One seeded trial: corrupted training set, both directions, paired MSEs.

    Draw order per trial is fixed: nominal training samples, outlier
    samples, then evaluation samples.
    """
    rng = derive_rng(config.seed, n_out, trial)
    nominal = gen_nominal_gaussian(config.train_points - n_out, rng)
    outliers = gen_outliers(n_out, rng)
    train = np.concatenate([nominal, outliers], axis=1)

    r_l2 = compact_svd(train).u[:, 0]
    r_l1 = solve(train).basis[:, 0]

    evaluation = gen_nominal_gaussian(config.eval_points, rng)
    return (
        mean_square_fit_error(r_l2, evaluation),
        mean_square_fit_error(r_l1, evaluation),
    )


def run_dimred(config=None):
    """Run the sweep and aggregate per outlier count."""
    config = config or DimredConfig()
    rows = []
    for n_out in config.n_out_values:
        if not 0 <= n_out <= config.train_points:
            raise ValueError(f"n_out={n_out} exceeds the training set size")
        mse = np.array(
            [_dimred_trial(config, n_out, t) for t in range(config.trials)]
        )
        wins = float(np.mean(mse[:, 1] < mse[:, 0]))
        half = 1.96 * np.sqrt(max(wins * (1 - wins), 1e-12) / config.trials)
        rows.append(
            [
                n_out,
                config.trials,
                float(mse[:, 0].mean()),
                float(mse[:, 1].mean()),
                float(mse[:, 0].std(ddof=1) / np.sqrt(config.trials)),
                float(mse[:, 1].std(ddof=1) / np.sqrt(config.trials)),
                wins,
                max(0.0, wins - half),
                min(1.0, wins + half),
            ]
        )
    return DimredReport(rows=rows)
