"""Image metrics used by the run reports and the acceptance suite."""

from __future__ import annotations

import numpy as np

from .guided import box_sum, window_counts
from .image import luminance_of


def psnr(reference: np.ndarray, test: np.ndarray, peak: float = 1.0) -> float:
    """Peak signal-to-noise ratio in dB; infinite for identical inputs."""
    err = np.asarray(reference, dtype=np.float64) - np.asarray(test, dtype=np.float64)
    mse = float(np.mean(err * err))
    if mse == 0.0:
        return float("inf")
    return 10.0 * np.log10(peak * peak / mse)


def rms_contrast(plane: np.ndarray) -> float:
    """Global RMS contrast: standard deviation of a luminance plane."""
    return float(np.std(plane))


def luminance_rms_contrast(img: np.ndarray) -> float:
    if img.ndim == 3:
        return rms_contrast(luminance_of(img))
    return rms_contrast(img)


def detail_variance(plane: np.ndarray, mask: np.ndarray | None = None, radius: int = 8) -> float:
    """Variance of the high-pass residual (plane minus its box mean).

    An independent texture-energy probe: it shares no code path with the
    guided-filter decomposition beyond plain box sums.
    """
    h, w = plane.shape
    mean = box_sum(np.asarray(plane, dtype=np.float64), radius) / window_counts(h, w, radius)
    residual = plane - mean
    if mask is not None:
        residual = residual[mask]
    return float(np.var(residual))


def region_variance(plane: np.ndarray, mask: np.ndarray) -> float:
    return float(np.var(plane[mask]))


def erode_mask(mask: np.ndarray, margin: int) -> np.ndarray:
    """Shrink a boolean region by `margin` pixels (L-infinity box erosion).

    A pixel survives iff every pixel of its clipped (2*margin+1)^2 window is
    inside the region, so image borders do not erode flat regions.
    """
    h, w = mask.shape
    inside = box_sum(mask.astype(np.float64), margin)
    return inside >= window_counts(h, w, margin) - 0.5
