"""Planar float raster conventions, sRGB transfer curves, luminance and chroma.

Images are float64 numpy arrays in linear light: ``(H, W)`` for a single
plane, ``(H, W, 3)`` for color. Nominal sample range is [0, 1]; shading
planes may exceed 1 up to ``S_MAX``.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeError

EPS_DIV = 1e-4  # divide guard for luminance/albedo denominators
R_MAX = 16.0    # chroma ratio ceiling
S_MAX = 4.0     # shading ceiling after the albedo division

# BT.709 luma weights applied to linear RGB.
LUMA_WEIGHTS = np.array([0.2126, 0.7152, 0.0722], dtype=np.float64)


def require_plane(img: np.ndarray, what: str = "image") -> np.ndarray:
    if not isinstance(img, np.ndarray) or img.ndim != 2:
        raise ShapeError(f"{what} must be a single (H, W) plane")
    return img


def require_color(img: np.ndarray, what: str = "image") -> np.ndarray:
    if not isinstance(img, np.ndarray) or img.ndim != 3 or img.shape[2] != 3:
        raise ShapeError(f"{what} must be an (H, W, 3) color buffer")
    return img


def require_same_size(a: np.ndarray, b: np.ndarray, what: str = "inputs") -> None:
    if a.shape[:2] != b.shape[:2]:
        raise ShapeError(f"{what} differ in size: {a.shape[:2]} vs {b.shape[:2]}")


def require_finite(img: np.ndarray, what: str = "image") -> np.ndarray:
    if not np.isfinite(img).all():
        raise ValueError(f"{what} contains NaN or infinity")
    return img


def srgb_decode(encoded: np.ndarray) -> np.ndarray:
    """sRGB electro-optical transfer: encoded [0,1] -> linear light."""
    e = np.asarray(encoded, dtype=np.float64)
    lo = e <= 0.04045
    out = np.empty_like(e)
    out[lo] = e[lo] / 12.92
    out[~lo] = ((e[~lo] + 0.055) / 1.055) ** 2.4
    return out


def srgb_encode(linear: np.ndarray) -> np.ndarray:
    """Inverse sRGB transfer: linear light [0,1] -> display encoding."""
    l = np.clip(np.asarray(linear, dtype=np.float64), 0.0, 1.0)
    lo = l <= 0.0031308
    out = np.empty_like(l)
    out[lo] = l[lo] * 12.92
    out[~lo] = 1.055 * l[~lo] ** (1.0 / 2.4) - 0.055
    return out


def luminance_of(img: np.ndarray) -> np.ndarray:
    """BT.709 luminance of a linear-light color buffer, clamped to [0, 1]."""
    require_color(img)
    return np.clip(img @ LUMA_WEIGHTS, 0.0, 1.0)


def chroma_of(img: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Per-channel channel-to-luminance ratios, (H, W, 3), clamped to [0, R_MAX].

    Where ``y`` is below the divide guard the ratios are set to 1 (gray).
    """
    require_color(img)
    require_plane(y, "luminance")
    require_same_size(img, y, "image and luminance")
    safe = y >= EPS_DIV
    denom = np.where(safe, y, 1.0)
    ratios = img / denom[..., None]
    ratios = np.where(safe[..., None], ratios, 1.0)
    return np.clip(ratios, 0.0, R_MAX)


def apply_chroma(ratios: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Rebuild a color buffer from chroma ratios and a luminance plane."""
    require_color(ratios, "chroma ratios")
    require_plane(y, "luminance")
    require_same_size(ratios, y, "ratios and luminance")
    return np.clip(ratios * y[..., None], 0.0, 1.0)


def resize_bilinear(img: np.ndarray, width: int, height: int) -> np.ndarray:
    """Bilinear resampling with endpoint-aligned sample positions.

    Interpolation is written in lerp form (v0 + f*(v1-v0)) so constant
    inputs are preserved bit-exactly.
    """
    if width < 1 or height < 1:
        raise ValueError("target dimensions must be positive")
    h, w = img.shape[:2]
    if (w, h) == (width, height):
        return img.copy()

    def axis_coords(n_src: int, n_dst: int) -> np.ndarray:
        if n_dst == 1:
            return np.array([(n_src - 1) / 2.0])
        return np.arange(n_dst, dtype=np.float64) * (n_src - 1) / (n_dst - 1)

    ys = axis_coords(h, height)
    xs = axis_coords(w, width)
    y0 = np.clip(np.floor(ys).astype(np.intp), 0, h - 1)
    x0 = np.clip(np.floor(xs).astype(np.intp), 0, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    fy = (ys - y0)[:, None]
    fx = (xs - x0)[None, :]
    if img.ndim == 3:
        fy = fy[..., None]
        fx = fx[..., None]

    top = img[np.ix_(y0, x0)]
    top = top + fx * (img[np.ix_(y0, x1)] - top)
    bot = img[np.ix_(y1, x0)]
    bot = bot + fx * (img[np.ix_(y1, x1)] - bot)
    return top + fy * (bot - top)
