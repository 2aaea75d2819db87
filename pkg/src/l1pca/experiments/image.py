"""Image reconstruction from occluded copies via rank-2 projection.

Several copies of one grayscale image are corrupted by replacing a few
tiles of a 4 x 4 partition with uniform noise patches; the vectorized
copies form a tall data matrix that is condensed to a rank-2
representation by L2 and by exact L1 subspace projection. Because the
sample count is tiny compared to the pixel dimension, the L1 search
evaluates its nuclear-norm metric through the small eigenbasis factor
rather than the pixel-domain matrix.
"""

from dataclasses import dataclass
from importlib import resources

import numpy as np

from ..numerics import compact_svd, eigen_basis
from ..solver_multi import solve_multi
from ..solver_single import DEFAULT_BUDGET, metric_l1
from ._rng import derive_rng
from .pgm import read_pgm

TILE_GRID = (4, 4)


def synthetic_image():
    """Deterministic 100 x 64 low-rank test scene (smooth ramp plus a wave)."""
    rows = np.arange(100.0)[:, None] / 99.0
    cols = np.arange(64.0)[None, :] / 63.0
    base = 40.0 + 150.0 * rows * cols
    wave = 45.0 * np.sin(2 * np.pi * rows * 2.0) * np.cos(2 * np.pi * cols * 2.0)
    return np.clip(np.rint(base + wave), 0, 255).astype(np.uint8)


def bundled_image():
    """The synthetic test image as shipped in the package data."""
    ref = resources.files("l1pca").joinpath("data/synthetic_100x64.pgm")
    with resources.as_file(ref) as path:
        return read_pgm(path)


def occlude_image(img, tiles_to_corrupt=3, rng=0):
    """Replace randomly chosen tiles of the 4 x 4 partition with uniform noise.

    Image dimensions must divide evenly into the tile grid. Tile choice
    and noise are deterministic per seed; the draw order is: tile
    indices, then one noise patch per chosen tile in that order.
    """
    img = np.asarray(img)
    rows_per, cols_per = TILE_GRID
    if img.shape[0] % rows_per or img.shape[1] % cols_per:
        raise ValueError(
            f"image shape {img.shape} does not divide into a {TILE_GRID} tile grid"
        )
    tile_h, tile_w = img.shape[0] // rows_per, img.shape[1] // cols_per
    rng = np.random.default_rng(rng)
    out = img.copy()
    chosen = rng.choice(rows_per * cols_per, size=tiles_to_corrupt, replace=False)
    for tile in chosen:
        r, c = divmod(int(tile), cols_per)
        patch = rng.integers(0, 256, size=(tile_h, tile_w))
        out[r * tile_h : (r + 1) * tile_h, c * tile_w : (c + 1) * tile_w] = patch
    return out


@dataclass
class ImageConfig:
    seed: int = 0
    instances: int = 10
    tiles_per_instance: int = 3
    k: int = 2
    budget: int = DEFAULT_BUDGET
    workers: int = 1


@dataclass
class ImageReport:
    mae_l2: float  # mean absolute pixel error vs the clean image
    mae_l1: float
    mse_l2: float
    mse_l1: float
    k_effective: int
    reconstructed_l2: np.ndarray  # pixel matrix, one column per instance
    reconstructed_l1: np.ndarray
    occluded: np.ndarray
    l1_identity_gap: float


def run_image(config=None, img=None):
    """Occlude, condense to rank k, and score both reconstructions.

    k is clamped to the data matrix rank so that the zero-occlusion case
    (all copies identical, rank one) still runs; both methods then use
    the same effective k.
    """
    config = config or ImageConfig()
    img = synthetic_image() if img is None else np.asarray(img)

    columns = [
        occlude_image(
            img, config.tiles_per_instance, derive_rng(config.seed, 4, i)
        ).ravel()
        for i in range(config.instances)
    ]
    m = np.stack(columns, axis=1).astype(float)

    k_eff = min(config.k, eigen_basis(m).rank)
    r_l2 = compact_svd(m).u[:, :k_eff]
    rec_l2 = r_l2 @ (r_l2.T @ m)

    result = solve_multi(m, k_eff, budget=config.budget, workers=config.workers)
    rec_l1 = result.basis @ (result.basis.T @ m)
    identity_gap = abs(metric_l1(m, result.basis) - result.metric) / result.metric

    clean = img.ravel().astype(float)[:, None]
    return ImageReport(
        mae_l2=float(np.abs(rec_l2 - clean).mean()),
        mae_l1=float(np.abs(rec_l1 - clean).mean()),
        mse_l2=float(((rec_l2 - clean) ** 2).mean()),
        mse_l1=float(((rec_l1 - clean) ** 2).mean()),
        k_effective=k_eff,
        reconstructed_l2=rec_l2,
        reconstructed_l1=rec_l1,
        occluded=m,
        l1_identity_gap=identity_gap,
    )
