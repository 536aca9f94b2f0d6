"""Sample-matrix coercion and validation.

A sample set is an (n, d) float array: n observations in d coordinates.
Every public operation funnels its inputs through :func:`as_sample_matrix`
so the finiteness/shape invariants hold package-wide.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch


def as_sample_matrix(data, name: str = "sample") -> np.ndarray:
    """Coerce array-like input to a validated (n, d) float matrix.

    1-D input is treated as n univariate observations. Raises ValueError
    on empty, ragged, non-finite, or more-than-2-D input.
    """
    arr = np.asarray(data, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-D matrix, got ndim={arr.ndim}")
    n, d = arr.shape
    if n < 1 or d < 1:
        raise ValueError(f"{name} must have at least one row and one column, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def require_same_dimension(x: np.ndarray, y: np.ndarray) -> int:
    """Return the common column count of two sample matrices or raise."""
    if x.shape[1] != y.shape[1]:
        raise DimensionMismatch(
            f"column counts differ: {x.shape[1]} vs {y.shape[1]}"
        )
    return x.shape[1]
