"""Direction-of-arrival robustness experiment on a uniform linear array.

A half-wavelength ULA takes a handful of snapshots of two plane waves
in complex white Gaussian noise; one arbitrarily chosen snapshot is
additionally hit by a jammer from a third direction. Snapshots are
lifted to real vectors by stacking real over imaginary parts, a K=2
subspace is computed by L2 and by the exact L1 solver, and both are
turned into MUSIC-style pseudospectra. The L1 spectrum should keep
pointing at the two true arrivals while the L2 one also responds to
the jammer.

By default each source amplitude carries an independent per-snapshot
unit-modulus factor drawn from the real unit circle {+1, -1}. In the
lifted real domain this makes the noiseless signal subspace genuinely
two-dimensional (one lifted steering direction per source), which is
what the K=2 subspace model presumes; complex-valued phases would
double that rank and defeat a two-component subspace. Set
``random_phase=False`` for the literal constant-amplitude model, whose
noiseless part collapses to a single lifted direction.
"""

from dataclasses import dataclass

import numpy as np

from ..numerics import compact_svd
from ..solver_multi import solve_multi
from ..solver_single import DEFAULT_BUDGET, metric_l1
from ._report import write_csv
from ._rng import derive_rng

DENOM_CLAMP = 1e-12


def steering_vector(theta, d_elements):
    """Half-wavelength ULA response [e^{j pi (k-1) sin theta}], k = 1..D."""
    if not -np.pi / 2 < theta < np.pi / 2:
        raise ValueError("theta must lie in (-pi/2, pi/2)")
    return np.exp(1j * np.pi * np.arange(d_elements) * np.sin(theta))


def lift_complex(m):
    """Stack the real part over the imaginary part (D x N -> 2D x N)."""
    m = np.asarray(m)
    if m.ndim == 1:
        return np.concatenate([m.real, m.imag]).astype(float)
    return np.concatenate([m.real, m.imag], axis=0).astype(float)


@dataclass
class SpectrumTable:
    """Pseudospectrum samples over a strictly increasing angle grid."""

    angles_rad: np.ndarray
    power: np.ndarray
    method: str
    clamped: int = 0  # grid points whose denominator hit the clamp

    @property
    def angles_deg(self):
        return np.degrees(self.angles_rad)

    def power_at(self, angle_deg):
        """Power at the grid point nearest the requested angle."""
        idx = int(np.argmin(np.abs(self.angles_deg - angle_deg)))
        return float(self.power[idx])

    def top_peaks(self, count):
        """Angles (degrees) of the `count` highest interior local maxima."""
        p = self.power
        interior = np.flatnonzero((p[1:-1] >= p[:-2]) & (p[1:-1] > p[2:])) + 1
        order = interior[np.argsort(p[interior])[::-1]]
        return [float(self.angles_deg[i]) for i in order[:count]]

    def to_csv(self, path):
        write_csv(
            path,
            ["angle_deg", "power"],
            [[float(a), float(v)] for a, v in zip(self.angles_deg, self.power)],
        )


def default_grid(step_deg=0.1):
    """Open grid over (-90, 90) degrees, returned in radians."""
    degs = np.arange(-90.0 + step_deg, 90.0, step_deg)
    return np.radians(degs)


def music_spectrum(r, grid=None, method="l1"):
    """Pseudospectrum 1 / (s^T (I - R R^T) s) over lifted steering vectors.

    ``r`` is a subspace basis with 2D rows (lifted domain). Denominators
    below DENOM_CLAMP are clamped and counted.
    """
    r = np.asarray(r, dtype=float)
    if r.ndim == 1:
        r = r[:, None]
    if r.shape[0] % 2:
        raise ValueError("subspace rows must be 2 * array size (lifted domain)")
    d_elements = r.shape[0] // 2
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    steering = np.stack(
        [lift_complex(steering_vector(t, d_elements)) for t in grid], axis=1
    )
    denom = np.sum(steering**2, axis=0) - np.sum((r.T @ steering) ** 2, axis=0)
    clamped = int(np.sum(denom < DENOM_CLAMP))
    return SpectrumTable(
        angles_rad=grid,
        power=1.0 / np.maximum(denom, DENOM_CLAMP),
        method=method,
        clamped=clamped,
    )


@dataclass
class DoaConfig:
    seed: int = 0
    elements: int = 5
    snapshots: int = 10
    theta1_deg: float = -30.0
    theta2_deg: float = 50.0
    jammer_deg: float = 20.0
    snr1_db: float = 2.0
    snr2_db: float = 3.0  # jammer amplitude equals the second source's
    noise_power: float = 1.0
    random_phase: bool = True  # per-snapshot {+1,-1} source factors; False = literal model
    grid_step_deg: float = 0.1
    k: int = 2
    budget: int = DEFAULT_BUDGET
    workers: int = 1


@dataclass
class DoaResult:
    l2: SpectrumTable
    l1: SpectrumTable
    jammed_snapshot: int
    l1_metric: float
    l1_identity_gap: float


def simulate_snapshots(config, rng):
    """Corrupted complex snapshot matrix plus the jammed snapshot index.

    Draw order is fixed: source sign factors (per source), noise (real
    part then imaginary part), jammed index, jammer sign factor.
    """
    d, n = config.elements, config.snapshots
    sigma = np.sqrt(config.noise_power)
    amp1 = sigma * 10 ** (config.snr1_db / 20.0)
    amp2 = sigma * 10 ** (config.snr2_db / 20.0)
    s1 = steering_vector(np.radians(config.theta1_deg), d)
    s2 = steering_vector(np.radians(config.theta2_deg), d)
    s_jam = steering_vector(np.radians(config.jammer_deg), d)

    if config.random_phase:
        phase1 = 1.0 - 2.0 * rng.integers(0, 2, n)
        phase2 = 1.0 - 2.0 * rng.integers(0, 2, n)
    else:
        phase1 = phase2 = np.ones(n)
    noise = (
        rng.standard_normal((d, n)) + 1j * rng.standard_normal((d, n))
    ) * (sigma / np.sqrt(2.0))

    x = amp1 * np.outer(s1, phase1) + amp2 * np.outer(s2, phase2) + noise
    jam_index = int(rng.integers(n))
    jam_phase = 1.0 - 2.0 * rng.integers(0, 2) if config.random_phase else 1.0
    x[:, jam_index] += amp2 * jam_phase * s_jam
    return x, jam_index


def run_doa(config=None):
    """Simulate one corrupted snapshot set and compute both spectra."""
    config = config or DoaConfig()
    rng = derive_rng(config.seed, 3)  # experiment-family subkey
    snapshots, jam_index = simulate_snapshots(config, rng)
    lifted = lift_complex(snapshots)

    r_l2 = compact_svd(lifted).u[:, : config.k]
    result = solve_multi(
        lifted, config.k, budget=config.budget, workers=config.workers
    )
    identity_gap = abs(metric_l1(lifted, result.basis) - result.metric) / result.metric

    grid = default_grid(config.grid_step_deg)
    return DoaResult(
        l2=music_spectrum(r_l2, grid, method="l2"),
        l1=music_spectrum(result.basis, grid, method="l1"),
        jammed_snapshot=jam_index,
        l1_metric=result.metric,
        l1_identity_gap=identity_gap,
    )
