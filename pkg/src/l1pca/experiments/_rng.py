"""Seed derivation for reproducible experiments.

All randomness flows through numpy's PCG64 bit generator, seeded from a
SeedSequence over (seed, *subkey) tuples, so every trial replays
bit-identically across platforms and is independent of the other
trials. Reports may therefore aggregate by trial index in any order.
"""

import numpy as np


def derive_rng(seed, *subkey):
    """PCG64 generator for the stream identified by (seed, *subkey)."""
    entropy = (int(seed),) + tuple(int(k) for k in subkey)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))
