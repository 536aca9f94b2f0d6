"""Scale curves: volume of the depth-trimmed region per trimming level.

The region at level alpha is estimated by the convex hull of the sample
points whose depth (against the full sample) is at least alpha; its
volume as alpha sweeps a grid is the scale curve, a dispersion measure
for comparing groups. Volumes are exact hull volumes at any dimension
(length at d=1, area at d=2, and so on).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .depths import DepthKind, depth_values
from .samples import as_sample_matrix


@dataclass(frozen=True, eq=False)
class ScaleCurve:
    """Paired (alpha, volume) sequence; volumes are nonincreasing in alpha."""

    alphas: np.ndarray
    volumes: np.ndarray
    depth_kind: DepthKind


def default_alpha_grid() -> np.ndarray:
    """alpha = 0.01, 0.02, ..., 0.99."""
    return np.round(np.arange(1, 100) / 100.0, 2)


def hull_volume(points: np.ndarray) -> float:
    """Convex hull volume; 0.0 for degenerate point sets.

    Fewer than d+1 points, or points that are affinely dependent
    (collinear in 2-D, coplanar in 3-D, ...), span zero volume.
    """
    n, d = points.shape
    if n < d + 1:
        return 0.0
    if d == 1:
        return float(points.max() - points.min())
    try:
        return float(ConvexHull(points).volume)
    except QhullError:
        return 0.0


def trimmed_region_points(sample, alpha: float, kind: DepthKind) -> np.ndarray:
    """Rows of the sample whose depth against the full sample is >= alpha."""
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    sample = as_sample_matrix(sample, "sample")
    depths = depth_values(sample, sample, kind)
    return sample[depths >= alpha]


def scale_curve(sample, alphas, kind: DepthKind) -> ScaleCurve:
    """Hull volume of the retained point set at each trimming level.

    ``alphas`` must be strictly increasing inside (0, 1]. Depths are
    computed once, so the retained sets are exactly nested and the
    volume sequence is nonincreasing.
    """
    sample = as_sample_matrix(sample, "sample")
    alphas = np.asarray(alphas, dtype=float)
    if alphas.ndim != 1 or alphas.size == 0:
        raise ValueError("alphas must be a nonempty 1-D sequence")
    if np.any(alphas <= 0.0) or np.any(alphas > 1.0):
        raise ValueError("alphas must lie in (0, 1]")
    if np.any(np.diff(alphas) <= 0.0):
        raise ValueError("alphas must be strictly increasing")
    depths = depth_values(sample, sample, kind)
    volumes = np.array([hull_volume(sample[depths >= a]) for a in alphas])
    return ScaleCurve(alphas=alphas, volumes=volumes, depth_kind=kind)
