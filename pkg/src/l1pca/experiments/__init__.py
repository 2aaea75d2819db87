"""Seeded robustness experiments comparing L1 and L2 subspaces.

Four studies: a dimensionality-reduction sweep over outlier counts, a
deterministic restoration of an embedded corrupted fixture, jammed
direction-of-arrival estimation on a uniform linear array, and
reconstruction of an image from occluded copies. Every run is
bit-reproducible given its seed and configuration.
"""

from ._rng import derive_rng
from .dimred import (
    NOMINAL_COV,
    OUTLIER_COV,
    OUTLIER_MEAN,
    DimredConfig,
    DimredReport,
    gen_nominal_gaussian,
    gen_outliers,
    mean_square_fit_error,
    run_dimred,
)
from .doa import (
    DoaConfig,
    DoaResult,
    SpectrumTable,
    default_grid,
    lift_complex,
    music_spectrum,
    run_doa,
    simulate_snapshots,
    steering_vector,
)
from .image import (
    ImageConfig,
    ImageReport,
    bundled_image,
    occlude_image,
    run_image,
    synthetic_image,
)
from .pgm import read_pgm, write_pgm
from .restore import RestorationReport, run_restoration
from . import fixtures

__all__ = [
    "NOMINAL_COV",
    "OUTLIER_COV",
    "OUTLIER_MEAN",
    "DimredConfig",
    "DimredReport",
    "DoaConfig",
    "DoaResult",
    "ImageConfig",
    "ImageReport",
    "RestorationReport",
    "SpectrumTable",
    "bundled_image",
    "default_grid",
    "derive_rng",
    "fixtures",
    "gen_nominal_gaussian",
    "gen_outliers",
    "lift_complex",
    "mean_square_fit_error",
    "music_spectrum",
    "occlude_image",
    "read_pgm",
    "run_dimred",
    "run_doa",
    "run_image",
    "run_restoration",
    "simulate_snapshots",
    "steering_vector",
    "synthetic_image",
    "write_pgm",
]
