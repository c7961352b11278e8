"""Deterministic synthetic scenes and test cards.

Every generator returns (rgb, nearness): a linear-light color image and a
matching depth map, both float64. Used by the fixture scripts, the bench
harness, and the test suite; everything is seeded so outputs are stable.
"""

from __future__ import annotations

import numpy as np

from .guided import box_sum, window_counts


def _smooth_noise(rng: np.random.Generator, h: int, w: int, radius: int) -> np.ndarray:
    """Band-limited noise in [0, 1]: box-smoothed white noise, renormalized."""
    noise = rng.random((h, w))
    sm = box_sum(noise, radius) / window_counts(h, w, radius)
    lo, hi = sm.min(), sm.max()
    if hi <= lo:
        return np.full((h, w), 0.5)
    return (sm - lo) / (hi - lo)


def bimodal_card(size: int = 192, fg_near: float = 0.9, bg_near: float = 0.1,
                 texture_amp: float = 0.02, seed: int = 7):
    """Flat background with a centered, finely textured foreground square.

    The background is exactly constant so its interior carries zero detail
    energy. Foreground texture is a small multiplicative luminance ripple:
    small enough that the albedo extraction smooths it out, so the ripple
    lands in the detail-shading layer where the boost operator acts on it.
    Depth is two-valued.
    """
    rng = np.random.default_rng(seed)
    h = w = size
    quarter = size // 4
    fg = np.zeros((h, w), dtype=bool)
    fg[quarter : h - quarter, quarter : w - quarter] = True

    base_color = np.array([0.32, 0.36, 0.42])
    fg_color = np.array([0.52, 0.42, 0.30])
    ripple = 1.0 + (rng.random((h, w)) - 0.5) * 2.0 * texture_amp
    rgb = np.empty((h, w, 3))
    for c in range(3):
        rgb[:, :, c] = np.where(fg, fg_color[c] * ripple, base_color[c])
    rgb = np.clip(rgb, 0.02, 0.95)

    nearness = np.where(fg, fg_near, bg_near)
    return rgb, nearness


def ramp_card(width: int = 256, height: int = 192):
    """Horizontal luminance ramp over a vertical depth ramp."""
    x = np.linspace(0.15, 0.85, width)
    y_shade = np.linspace(0.9, 1.1, height)
    lum = y_shade[:, None] * x[None, :]
    rgb = np.dstack([lum * 0.9, lum, lum * 1.05])
    rgb = np.clip(rgb, 0.0, 1.0)
    nearness = np.repeat(np.linspace(0.0, 1.0, height)[:, None], width, axis=1)
    return rgb, nearness


def checker_card(size: int = 192, cells: int = 8):
    """Low-contrast checkerboard with radial depth (center nearest)."""
    idx = np.arange(size)
    cy, cx = np.meshgrid(idx // (size // cells), idx // (size // cells), indexing="ij")
    checker = ((cy + cx) % 2).astype(np.float64)
    lum = 0.35 + 0.25 * checker
    rgb = np.dstack([lum, lum * 0.95, lum * 0.9])
    yy, xx = np.meshgrid(idx, idx, indexing="ij")
    r = np.hypot(yy - size / 2, xx - size / 2)
    nearness = np.clip(1.0 - r / (size / 2), 0.0, 1.0)
    return rgb, nearness


def blob_scene(width: int = 256, height: int = 192, seed: int = 1):
    """Natural-ish scene: smooth hue field, soft shading, mild texture.

    Hue varies smoothly (so the carried chroma ratios stay faithful) while
    luminance carries both large-scale shading and fine texture.
    """
    rng = np.random.default_rng(seed)
    hue_r = 0.3 + 0.4 * _smooth_noise(rng, height, width, 48)
    hue_g = 0.3 + 0.4 * _smooth_noise(rng, height, width, 48)
    hue_b = 0.3 + 0.4 * _smooth_noise(rng, height, width, 48)
    shading = 0.7 + 0.5 * _smooth_noise(rng, height, width, 40)
    texture = 1.0 + 0.10 * (_smooth_noise(rng, height, width, 2) - 0.5)
    lum_mod = shading * texture
    rgb = np.dstack([hue_r, hue_g, hue_b]) * lum_mod[..., None]
    rgb = np.clip(rgb, 0.01, 0.95)
    nearness = _smooth_noise(rng, height, width, 56)
    return rgb, nearness


def stereo_scene(width: int = 256, height: int = 192, seed: int = 3, planes: int = 4):
    """Piecewise-planar scene: depth slabs with per-slab albedo and texture."""
    rng = np.random.default_rng(seed)
    slab = np.zeros((height, width), dtype=np.intp)
    edges = np.sort(rng.integers(low=width // 8, high=width - width // 8, size=planes - 1))
    for e in edges:
        slab += (np.arange(width)[None, :] >= e).astype(np.intp)
    colors = 0.25 + 0.5 * rng.random((planes, 3))
    depth_vals = np.linspace(0.15, 0.9, planes)
    rng.shuffle(depth_vals)
    rgb = colors[slab]
    texture = (rng.random((height, width)) - 0.5) * 0.06
    shade = 0.85 + 0.3 * (np.arange(height)[:, None] / max(height - 1, 1))
    rgb = rgb * shade[..., None] + texture[..., None]
    rgb = np.clip(rgb, 0.02, 0.95)
    nearness = depth_vals[slab]
    return rgb, nearness


def fixture_set(width: int = 256, height: int = 192):
    """The 10-scene acceptance fixture set: synthetic cards plus scene crops."""
    scenes = [
        ("bimodal_card", bimodal_card(min(width, height))),
        ("ramp_card", ramp_card(width, height)),
        ("checker_card", checker_card(min(width, height))),
        ("blobs_a", blob_scene(width, height, seed=1)),
        ("blobs_b", blob_scene(width, height, seed=2)),
        ("stereo_a", stereo_scene(width, height, seed=3)),
        ("stereo_b", stereo_scene(width, height, seed=4)),
        ("stereo_c", stereo_scene(width, height, seed=5, planes=5)),
        ("blobs_c", blob_scene(width, height, seed=6)),
        ("gray_card", gray_card(width, height)),
    ]
    return scenes


def gray_card(width: int = 256, height: int = 192):
    """Achromatic card: gradient plus bars; exercises the gray-world path."""
    x = np.linspace(0.1, 0.9, width)[None, :]
    bars = 0.1 * ((np.arange(width)[None, :] // 16) % 2)
    lum = np.clip(np.repeat(x + bars, height, axis=0), 0.0, 1.0)
    rgb = np.dstack([lum, lum, lum])
    nearness = np.repeat(np.linspace(0.2, 0.8, width)[None, :], height, axis=0)
    return rgb, nearness


def scene_1080p(seed: int = 11):
    """Full-HD scene for runtime and throughput checks."""
    return blob_scene(1920, 1080, seed=seed)
