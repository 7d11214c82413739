"""Seeded, splittable random streams.

Every randomized routine takes an explicit generator built here, so a run
is reproducible from its seed alone. Child streams are derived from the
master seed by counter (``spawn_key``), which makes the stream of trial
``i`` independent of how many other trials exist or in which order they
execute.
"""

import numpy as np

SEED_MASK = (1 << 64) - 1


def make_rng(seed: int) -> np.random.Generator:
    """Return a PCG64 generator for a 64-bit unsigned seed."""
    sequence = np.random.SeedSequence(seed & SEED_MASK)
    return np.random.Generator(np.random.PCG64(sequence))


def child_seed(master_seed: int, index: int) -> int:
    """Derive the 64-bit seed of child stream ``index`` from ``master_seed``."""
    sequence = np.random.SeedSequence(master_seed & SEED_MASK, spawn_key=(index,))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])
