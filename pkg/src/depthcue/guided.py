"""Edge-preserving guided filter: naive reference and constant-time fast path.

Both implementations use window clipping at image borders (statistics are
taken over the valid window intersection only), so they agree everywhere,
borders included. The fast path runs on summed-area tables in float64 and
is required to match the reference within 1e-6.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError
from .image import require_plane, require_same_size


@dataclass(frozen=True)
class GuidedFilterParams:
    radius: int = 8       # window half-width in pixels
    epsilon: float = 1e-2  # variance regularizer; 0 permitted only in tests

    def __post_init__(self):
        if self.radius < 1:
            raise ValueError("radius must be >= 1")
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")


def box_sum(plane: np.ndarray, radius: int) -> np.ndarray:
    """Sum over the clipped (2r+1)-square window around each pixel."""
    h, w = plane.shape
    ii = np.zeros((h + 1, w + 1), dtype=np.float64)
    np.cumsum(plane, axis=0, out=ii[1:, 1:])
    np.cumsum(ii[1:, 1:], axis=1, out=ii[1:, 1:])
    y0 = np.clip(np.arange(h) - radius, 0, h)
    y1 = np.clip(np.arange(h) + radius + 1, 0, h)
    x0 = np.clip(np.arange(w) - radius, 0, w)
    x1 = np.clip(np.arange(w) + radius + 1, 0, w)
    return (
        ii[np.ix_(y1, x1)]
        - ii[np.ix_(y0, x1)]
        - ii[np.ix_(y1, x0)]
        + ii[np.ix_(y0, x0)]
    )


def window_counts(height: int, width: int, radius: int) -> np.ndarray:
    """Number of valid pixels in each clipped window (no cumsum needed)."""
    ys = np.clip(np.arange(height) + radius + 1, 0, height) - np.clip(
        np.arange(height) - radius, 0, height
    )
    xs = np.clip(np.arange(width) + radius + 1, 0, width) - np.clip(
        np.arange(width) - radius, 0, width
    )
    return ys[:, None].astype(np.float64) * xs[None, :]


class GuidedFilter:
    """Fast guided filter with precomputed guide statistics.

    Reuse one instance to filter several planes against the same guide
    (e.g. the three channels of a color image).
    """

    def __init__(self, guide: np.ndarray, params: GuidedFilterParams):
        require_plane(guide, "guide")
        self.params = params
        self.guide = np.asarray(guide, dtype=np.float64)
        h, w = guide.shape
        self._n = window_counts(h, w, params.radius)
        self._mean_g = box_sum(self.guide, params.radius) / self._n
        var = box_sum(self.guide * self.guide, params.radius) / self._n
        var -= self._mean_g * self._mean_g
        self._var_g = np.maximum(var, 0.0)

    def apply(self, src: np.ndarray) -> np.ndarray:
        require_plane(src, "input")
        if src.shape != self.guide.shape:
            raise ShapeError(
                f"guide and input differ in size: {self.guide.shape} vs {src.shape}"
            )
        r = self.params.radius
        src = np.asarray(src, dtype=np.float64)
        mean_s = box_sum(src, r) / self._n
        cov = box_sum(self.guide * src, r) / self._n - self._mean_g * mean_s
        denom = self._var_g + self.params.epsilon
        # denom == 0 only for epsilon == 0 on a constant window; the affine
        # model degenerates to the window mean there.
        a = np.divide(cov, denom, out=np.zeros_like(cov), where=denom > 0)
        b = mean_s - a * self._mean_g
        return self.guide * (box_sum(a, r) / self._n) + box_sum(b, r) / self._n


def guided_filter_fast(
    guide: np.ndarray, src: np.ndarray, params: GuidedFilterParams
) -> np.ndarray:
    """Summed-area-table guided filter; contract-identical to the reference."""
    return GuidedFilter(guide, params).apply(src)


def guided_filter_reference(
    guide: np.ndarray, src: np.ndarray, params: GuidedFilterParams
) -> np.ndarray:
    """Direct per-window O(n*r^2) guided filter, the oracle for the fast path.

    Per window k: a_k = cov(guide, src) / (var(guide) + eps),
    b_k = mean(src) - a_k * mean(guide); the output at pixel i averages
    a_k * guide_i + b_k over every window containing i.
    """
    require_plane(guide, "guide")
    require_plane(src, "input")
    require_same_size(guide, src, "guide and input")
    guide = np.asarray(guide, dtype=np.float64)
    src = np.asarray(src, dtype=np.float64)
    h, w = guide.shape
    r = params.radius
    a = np.zeros((h, w), dtype=np.float64)
    b = np.zeros((h, w), dtype=np.float64)
    for i in range(h):
        y0, y1 = max(0, i - r), min(h, i + r + 1)
        for j in range(w):
            x0, x1 = max(0, j - r), min(w, j + r + 1)
            g = guide[y0:y1, x0:x1]
            p = src[y0:y1, x0:x1]
            mg = g.mean()
            mp = p.mean()
            var = ((g - mg) ** 2).mean()
            cov = ((g - mg) * (p - mp)).mean()
            denom = var + params.epsilon
            ak = cov / denom if denom > 0 else 0.0
            a[i, j] = ak
            b[i, j] = mp - ak * mg
    out = np.zeros((h, w), dtype=np.float64)
    for i in range(h):
        y0, y1 = max(0, i - r), min(h, i + r + 1)
        for j in range(w):
            x0, x1 = max(0, j - r), min(w, j + r + 1)
            out[i, j] = (a[y0:y1, x0:x1] * guide[i, j] + b[y0:y1, x0:x1]).mean()
    return out
