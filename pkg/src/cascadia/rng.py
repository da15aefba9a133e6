"""Deterministic random-stream derivation.

Every stochastic routine in this package draws from a
``numpy.random.Generator`` handed to it by the caller.  Harnesses that run
many trials derive one independent stream per unit of work from a single
master seed, keyed by the work's coordinates (size, trial, matrix cell, ...),
so results never depend on scheduling or thread count.
"""

from __future__ import annotations

import numpy as np


def derive_rng(master_seed: int, *key: int) -> np.random.Generator:
    """Return an independent PCG64 stream for ``(master_seed, *key)``.

    Identical arguments always yield an identical stream; distinct keys yield
    statistically independent streams.
    """
    if master_seed < 0:
        raise ValueError("master_seed must be non-negative")
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(seq))


def fresh_entropy_seed() -> int:
    """Draw a master seed from OS entropy (for explicit opt-in randomness)."""
    return int(np.random.SeedSequence().entropy) % (2**63)
