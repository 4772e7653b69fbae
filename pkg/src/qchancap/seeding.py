"""Reproducible counter-based randomness.

Every stochastic routine keys an independent Philox stream by (seed, index
path), so per-trial streams are identical no matter how trials are scheduled
across threads, and identical seeds reproduce results bit for bit.
"""
from __future__ import annotations

import numpy as np


def spawned_rng(seed: int, *indices: int) -> np.random.Generator:
    """Philox generator for one work item of a seeded experiment."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=indices)))
