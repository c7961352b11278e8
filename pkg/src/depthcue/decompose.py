"""Albedo/shading decomposition and the base/detail shading split.

The luminance of the input is modeled multiplicatively: I_y = A_y * S with
S = S_B + S_D split additively into a smooth base and a signed detail
residual. Albedo comes from guided-filtering each channel against the
shared luminance plane; shading is the guarded division I_y / A_y.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .guided import GuidedFilter, GuidedFilterParams
from .image import (
    EPS_DIV,
    S_MAX,
    LUMA_WEIGHTS,
    chroma_of,
    luminance_of,
    require_color,
    require_plane,
)


@dataclass(frozen=True)
class DecompParams:
    albedo_radius: int = 16
    albedo_eps: float = 0.02 ** 2
    shading_radius: int = 8
    shading_eps: float = 0.1 ** 2

    def __post_init__(self):
        if self.albedo_radius < 1 or self.shading_radius < 1:
            raise ValueError("radii must be >= 1")
        if self.albedo_eps <= 0 or self.shading_eps <= 0:
            raise ValueError("epsilons must be > 0")

    def albedo_filter(self) -> GuidedFilterParams:
        return GuidedFilterParams(self.albedo_radius, self.albedo_eps)

    def shading_filter(self) -> GuidedFilterParams:
        return GuidedFilterParams(self.shading_radius, self.shading_eps)


@dataclass(frozen=True)
class Decomposition:
    albedo: np.ndarray      # A_y in [EPS_DIV, 1]
    base: np.ndarray        # S_B, smooth shading, >= 0 up to filter overshoot
    detail: np.ndarray      # S_D, signed residual; base + detail == shading
    chroma: np.ndarray      # (H, W, 3) channel-to-luminance ratios of the albedo
    luminance: np.ndarray   # retained original I_y
    guarded: np.ndarray     # bool, True where a clamp fired during albedo/shading

    @property
    def shading(self) -> np.ndarray:
        return self.base + self.detail


def extract_albedo(img: np.ndarray, params: DecompParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Guided-filter albedo: returns (A_y, chroma ratios, clamp mask).

    Chroma ratios are taken against the ORIGINAL image and luminance, not
    the filtered albedo: recomposition scales every channel by the
    luminance gain (c' = I_c * I'_y / I_y), which keeps hue exactly and
    makes the identity configuration a true round trip. Albedo-derived
    ratios would bake the smoothing into the colors of every output.
    """
    require_color(img)
    i_y = luminance_of(img)
    gf = GuidedFilter(i_y, params.albedo_filter())
    a_rgb = np.dstack([gf.apply(img[:, :, c]) for c in range(3)])
    a_raw = a_rgb @ LUMA_WEIGHTS
    guarded = (a_raw < EPS_DIV) | (a_raw > 1.0)
    a_y = np.clip(a_raw, EPS_DIV, 1.0)
    return a_y, chroma_of(img, i_y), guarded


def derive_shading(i_y: np.ndarray, a_y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Shading S = I_y / A_y clamped to [0, S_MAX]; returns (S, clamp mask)."""
    require_plane(i_y, "luminance")
    require_plane(a_y, "albedo")
    raw = i_y / a_y
    guarded = raw > S_MAX
    return np.clip(raw, 0.0, S_MAX), guarded


def split_shading(s: np.ndarray, params: DecompParams) -> tuple[np.ndarray, np.ndarray]:
    """Additive base/detail split: S_B = self-guided filter of S, S_D = S - S_B."""
    require_plane(s, "shading")
    base = GuidedFilter(s, params.shading_filter()).apply(s)
    return base, s - base


def decompose(img: np.ndarray, params: DecompParams | None = None) -> Decomposition:
    """Full decomposition of a linear-light color image."""
    params = params or DecompParams()
    a_y, chroma, guard_a = extract_albedo(img, params)
    i_y = luminance_of(img)
    s, guard_s = derive_shading(i_y, a_y)
    base, detail = split_shading(s, params)
    return Decomposition(
        albedo=a_y,
        base=base,
        detail=detail,
        chroma=chroma,
        luminance=i_y,
        guarded=guard_a | guard_s,
    )
