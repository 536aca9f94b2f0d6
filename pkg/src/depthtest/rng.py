"""Deterministic substreams on top of the Philox counter-based generator.

Every random consumer in the package draws from a stream addressed by a
tuple of integers (seed, tag, indices...). Streams with different keys are
statistically independent, and a given key yields the same draws no matter
how many other streams were consumed first, so replication loops can be
reordered or parallelized without changing any result.
"""

from __future__ import annotations

import numpy as np

from .special import norm_ppf

# Stream tags; values are arbitrary but frozen (part of the reproducibility
# contract: changing them changes every seeded result).
TAG_DIRECTIONS = 1
TAG_SCENARIO = 2
TAG_NULL_CALIBRATION = 3
TAG_PERMUTATION = 4
TAG_MC_ASYMPTOTIC = 5

_MASK64 = (1 << 64) - 1


def substream(*key: int) -> np.random.Generator:
    """Generator for the Philox stream addressed by an integer key tuple."""
    seq = np.random.SeedSequence([int(k) & _MASK64 for k in key])
    return np.random.Generator(np.random.Philox(seq))


def standard_normals(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard normal variates via inverse CDF on the uniform stream.

    No rejection loop: one uniform consumed per variate, so the stream
    position is a pure function of the draw count.
    """
    u = rng.random(shape)
    # rng.random() can return exactly 0.0; nudge into the open interval.
    tiny = np.finfo(float).tiny
    u = np.where(u < tiny, tiny, u)
    return norm_ppf(u)
