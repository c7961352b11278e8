"""Depth ingestion and analysis: nearness maps, foreground/background split.

Nearness is normalized inverse depth in [0, 1]: 1 is closest to the viewer.
Two profile kinds gate the depth-weighted operators downstream: a binary
two-layer split (foreground mask + per-side mean nearness) and a continuous
per-pixel map.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import io
from .errors import DataError
from .image import require_plane, resize_bilinear

OTSU_BINS = 256


@dataclass(frozen=True)
class TwoLayerProfile:
    mask: np.ndarray        # bool, True = foreground
    fg_nearness: float
    bg_nearness: float

    def __post_init__(self):
        if not self.fg_nearness > self.bg_nearness:
            raise DataError("foreground must be nearer than background")

    @property
    def shape(self):
        return self.mask.shape

    def nearness_field(self) -> np.ndarray:
        return np.where(self.mask, self.fg_nearness, self.bg_nearness)


@dataclass(frozen=True)
class ContinuousProfile:
    nearness: np.ndarray    # (H, W) in [0, 1]

    @property
    def shape(self):
        return self.nearness.shape

    def nearness_field(self) -> np.ndarray:
        return self.nearness


DepthProfile = TwoLayerProfile | ContinuousProfile


def depth_from_file(path: str, kind: str = "disparity") -> np.ndarray:
    """Load a PFM or 16-bit PNG and normalize it to a nearness map.

    kind='disparity': larger raw values are nearer (min-max affine map).
    kind='depth': larger raw values are farther; samples are inverted (1/z)
    before the min-max map. Non-finite and non-positive samples are invalid
    and filled from the nearest valid neighbor.
    """
    if kind not in ("disparity", "depth"):
        raise ValueError(f"unknown depth kind: {kind}")
    raw = io.load_raw(path)
    if raw.ndim == 3:
        raw = raw[:, :, 0]
    return normalize_nearness(raw, kind)


def normalize_nearness(raw: np.ndarray, kind: str = "disparity") -> np.ndarray:
    require_plane(raw, "depth map")
    raw = np.asarray(raw, dtype=np.float64)
    invalid = ~np.isfinite(raw) | (raw <= 0.0)
    if invalid.all():
        raise DataError("depth map has no valid samples")
    if invalid.any():
        raw = fill_invalid(raw, invalid)
    if kind == "depth":
        raw = 1.0 / raw
    lo, hi = float(raw.min()), float(raw.max())
    if hi <= lo:
        # Degenerate constant map: neutral mid-nearness keeps the pipeline
        # usable as depth-independent enhancement.
        return np.full(raw.shape, 0.5)
    return (raw - lo) / (hi - lo)


def fill_invalid(raw: np.ndarray, invalid: np.ndarray) -> np.ndarray:
    """Propagate nearest valid values into invalid pixels.

    Wavefront rounds over the 4-neighborhood; among same-round donors the
    first neighbor in row-major order (N, W, E, S) wins, deterministically.
    """
    out = raw.copy()
    out[invalid] = 0.0
    todo = invalid.copy()
    while todo.any():
        settled = ~todo
        claimed_any = False
        for shift in ((-1, 0), (0, -1), (0, 1), (1, 0)):
            donor_vals = _shifted(out, shift)
            donor_ok = _shifted(settled, shift, fill=False)
            claim = todo & donor_ok
            if claim.any():
                out[claim] = donor_vals[claim]
                todo &= ~claim
                claimed_any = True
        if not claimed_any:
            break  # unreachable when at least one sample is valid
    return out


def _shifted(arr: np.ndarray, shift, fill=0.0):
    dy, dx = shift
    out = np.full_like(arr, fill)
    h, w = arr.shape
    ys = slice(max(0, dy), min(h, h + dy))
    xs = slice(max(0, dx), min(w, w + dx))
    yd = slice(max(0, -dy), min(h, h - dy))
    xd = slice(max(0, -dx), min(w, w - dx))
    out[yd, xd] = arr[ys, xs]
    return out


def depth_from_prior(width: int, height: int, prior: str = "vertical-gradient") -> np.ndarray:
    """Built-in depth fallback: ground-plane prior, bottom of frame nearest."""
    if prior != "vertical-gradient":
        raise ValueError(f"unknown depth prior: {prior}")
    if width < 1 or height < 1:
        raise ValueError("dimensions must be positive")
    if height == 1:
        col = np.zeros(1)
    else:
        col = np.arange(height, dtype=np.float64) / (height - 1)
    return np.repeat(col[:, None], width, axis=1)


def otsu_threshold_index(hist: np.ndarray) -> int:
    """First bin boundary k maximizing between-class variance of `hist`.

    Classes are bins [0..k] and [k+1..255]; variance is computed over bin
    indices. Returns -1 when no split produces two non-empty classes.
    """
    counts = hist.astype(np.float64)
    total = counts.sum()
    idx = np.arange(len(counts), dtype=np.float64)
    w0 = np.cumsum(counts)
    mu0 = np.cumsum(counts * idx)
    mu_t = mu0[-1]
    w1 = total - w0
    valid = (w0 > 0) & (w1 > 0)
    valid = valid[:-1]
    if not valid.any():
        return -1
    w0 = w0[:-1]
    w1 = w1[:-1]
    mu0c = mu0[:-1]
    with np.errstate(divide="ignore", invalid="ignore"):
        between = np.where(
            valid, (mu_t * w0 - mu0c * total) ** 2 / (w0 * w1), -np.inf
        )
    k = int(np.argmax(between))
    if not np.isfinite(between[k]) or between[k] <= 0:
        return -1
    return k


def two_layer_from_map(nearness: np.ndarray) -> TwoLayerProfile:
    """Split a nearness map into foreground/background via a 256-bin Otsu threshold."""
    require_plane(nearness, "nearness map")
    hist, _ = np.histogram(nearness, bins=OTSU_BINS, range=(0.0, 1.0))
    k = otsu_threshold_index(hist)
    if k < 0:
        raise DataError("no depth separation")
    threshold = (k + 1) / OTSU_BINS
    mask = nearness >= threshold
    if not mask.any() or mask.all():
        raise DataError("no depth separation")
    fg = float(nearness[mask].mean())
    bg = float(nearness[~mask].mean())
    return TwoLayerProfile(mask=mask, fg_nearness=fg, bg_nearness=bg)


def resample_depth(nearness: np.ndarray, width: int, height: int) -> np.ndarray:
    """Bilinear nearness resampling; identity dimensions return a bit-identical copy."""
    require_plane(nearness, "nearness map")
    out = resize_bilinear(nearness, width, height)
    return np.clip(out, 0.0, 1.0)
