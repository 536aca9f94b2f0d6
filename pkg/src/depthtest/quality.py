"""The directed quality index Q between two empirical samples.

Q(F_m, G_n) is the average, over the second sample, of the fraction of the
reference sample whose depth does not exceed the query point's depth; ties
count via the weak inequality. Both directions are computed because the
reference role is not symmetric. Under homogeneity each direction centers
on 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .depths import DepthKind, depth_values
from .errors import SizeLimit
from .samples import as_sample_matrix, require_same_dimension

ORACLE_CAP = 64


@dataclass(frozen=True)
class QualityPair:
    """Both directed quality indices with the sample sizes that scale them.

    Each index is an integer multiple of 1/(m*n).
    """

    q_fg: float
    q_gf: float
    m: int
    n: int


def directed_quality(ref_depths: np.ndarray, other_depths: np.ndarray) -> float:
    """Q with the first argument's sample as reference.

    ``ref_depths`` are the reference sample's depths against itself,
    ``other_depths`` the other sample's depths against the same reference.
    """
    ordered = np.sort(ref_depths)
    counts = np.searchsorted(ordered, other_depths, side="right")
    return int(counts.sum()) / (ref_depths.size * other_depths.size)


def quality(x, y, kind: DepthKind) -> QualityPair:
    """Both directed quality indices Q(F_m, G_n) and Q(G_n, F_m)."""
    x = as_sample_matrix(x, "x")
    y = as_sample_matrix(y, "y")
    require_same_dimension(x, y)
    m, n = x.shape[0], y.shape[0]
    pooled = np.vstack([x, y])
    under_x = depth_values(pooled, x, kind)
    under_y = depth_values(pooled, y, kind)
    q_fg = directed_quality(under_x[:m], under_x[m:])
    q_gf = directed_quality(under_y[m:], under_y[:m])
    return QualityPair(q_fg=q_fg, q_gf=q_gf, m=m, n=n)


def quality_brute_oracle(x, y, kind: DepthKind) -> QualityPair:
    """Independent double-loop evaluation of the quality pair.

    Counts every depth comparison explicitly; exists to pin down the
    sorted/searchsorted production path. Capped at 64 x 64.
    """
    x = as_sample_matrix(x, "x")
    y = as_sample_matrix(y, "y")
    require_same_dimension(x, y)
    m, n = x.shape[0], y.shape[0]
    if m > ORACLE_CAP or n > ORACLE_CAP:
        raise SizeLimit(f"oracle accepts at most {ORACLE_CAP} rows per sample")
    pooled = np.vstack([x, y])
    under_x = depth_values(pooled, x, kind)
    under_y = depth_values(pooled, y, kind)

    def count_all(ref: np.ndarray, other: np.ndarray) -> int:
        total = 0
        for dv in other:
            for rv in ref:
                if rv <= dv:
                    total += 1
        return total

    q_fg = count_all(under_x[:m], under_x[m:]) / (m * n)
    q_gf = count_all(under_y[m:], under_y[:m]) / (m * n)
    return QualityPair(q_fg=q_fg, q_gf=q_gf, m=m, n=n)
