"""Depth-weighted shading and contrast retargeting operators.

Operator chain, applied to a decomposition in fixed order:
base shading through a truncated power curve, detail shading through a
linear boost, both then modulated by per-pixel depth weights (emphasis
near, suppression far), the albedo through a global contrast stretch, and
finally recomposition with the carried chroma ratios. Every sub-operator
has an ablation toggle that forces it to the exact identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .decompose import DecompParams, Decomposition, decompose
from .depth import DepthProfile
from .errors import ShapeError
from .image import EPS_DIV, S_MAX, apply_chroma, require_plane, require_same_size


@dataclass(frozen=True)
class AblationToggles:
    """Enable flags for the four sub-operators, in pipeline order."""

    base_shading: bool = True
    detail_shading: bool = True
    shading_contrast: bool = True
    albedo_contrast: bool = True

    @classmethod
    def none(cls) -> "AblationToggles":
        return cls(False, False, False, False)

    @classmethod
    def cumulative(cls, n: int) -> "AblationToggles":
        """First `n` toggles on (0..4): the ablation ladder configurations."""
        flags = [i < n for i in range(4)]
        return cls(*flags)


@dataclass(frozen=True)
class RetargetParams:
    gamma: float = 0.8            # exponent of the base-shading power curve
    trunc_lo: float = 0.05        # lower truncation of base shading
    trunc_hi: float = 2.0         # upper truncation; fixed point of the curve
    detail_gain: float = 1.8      # linear boost of detail shading
    alpha_shading: float = 0.3    # depth-weight gain on base-shading deviation
    beta_texture: float = 0.4     # depth-weight gain on detail shading
    albedo_contrast: float = 1.25  # global contrast gain about the pivot
    albedo_pivot: float | None = None  # None: per-image mean albedo
    ablation: AblationToggles = field(default_factory=AblationToggles)

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("gamma must be > 0")
        if not (0 <= self.trunc_lo < self.trunc_hi <= S_MAX):
            raise ValueError("need 0 <= trunc_lo < trunc_hi <= S_MAX")
        if self.detail_gain < 0:
            raise ValueError("detail_gain must be >= 0")
        if not (0 <= self.alpha_shading < 1) or not (0 <= self.beta_texture < 1):
            raise ValueError("depth-weight gains must lie in [0, 1)")
        if not self.albedo_contrast > 0:
            raise ValueError("albedo_contrast must be > 0")
        if self.albedo_pivot is not None and not (0 < self.albedo_pivot < 1):
            raise ValueError("albedo_pivot must lie in (0, 1)")

    def with_ablation(self, toggles: AblationToggles) -> "RetargetParams":
        return replace(self, ablation=toggles)


def identity_params() -> RetargetParams:
    """Configuration under which the whole chain is the identity."""
    return RetargetParams(
        gamma=1.0,
        trunc_lo=0.0,
        trunc_hi=S_MAX,
        detail_gain=1.0,
        alpha_shading=0.0,
        beta_texture=0.0,
        albedo_contrast=1.0,
    )


def retarget_base(base: np.ndarray, params: RetargetParams) -> np.ndarray:
    """Truncated power curve with the upper truncation point as fixed point."""
    if not params.ablation.base_shading:
        return base
    s = np.clip(base, params.trunc_lo, params.trunc_hi)
    if params.gamma == 1.0:
        return s
    return params.trunc_hi * (s / params.trunc_hi) ** params.gamma


def boost_detail(detail: np.ndarray, params: RetargetParams) -> np.ndarray:
    if not params.ablation.detail_shading:
        return detail
    return params.detail_gain * detail


def depth_weight(profile: DepthProfile, gain: float, shape=None) -> np.ndarray:
    """Per-pixel weight w = 1 + gain*(2*nearness - 1), in [1-gain, 1+gain]."""
    if not (0 <= gain < 1):
        raise ValueError("gain must lie in [0, 1)")
    d = profile.nearness_field()
    if shape is not None and d.shape != tuple(shape):
        raise ShapeError(f"depth profile {d.shape} does not match image {tuple(shape)}")
    return 1.0 + gain * (2.0 * d - 1.0)


def apply_shading_contrast(
    base: np.ndarray,
    detail: np.ndarray,
    profile: DepthProfile,
    params: RetargetParams,
) -> tuple[np.ndarray, np.ndarray]:
    """Depth-modulate both shading layers.

    Base-shading deviation from the neutral value 1 is scaled by the alpha
    weight (flattening far regions toward neutral rather than darkening
    them); detail shading is scaled directly by the beta weight.
    """
    if not params.ablation.shading_contrast:
        return base, detail
    out_base = base
    out_detail = detail
    if params.alpha_shading > 0:
        w = depth_weight(profile, params.alpha_shading, base.shape)
        out_base = 1.0 + w * (base - 1.0)
    if params.beta_texture > 0:
        w = depth_weight(profile, params.beta_texture, detail.shape)
        out_detail = w * detail
    return out_base, out_detail


def tone_map_albedo(albedo: np.ndarray, params: RetargetParams) -> np.ndarray:
    """Linear contrast stretch of the albedo about a pivot, clamped to [EPS_DIV, 1]."""
    if not params.ablation.albedo_contrast or params.albedo_contrast == 1.0:
        return albedo
    pivot = params.albedo_pivot
    if pivot is None:
        pivot = float(albedo.mean())
    stretched = pivot + params.albedo_contrast * (albedo - pivot)
    return np.clip(stretched, EPS_DIV, 1.0)


def recompose(
    albedo: np.ndarray,
    base: np.ndarray,
    detail: np.ndarray,
    chroma: np.ndarray,
    luminance: np.ndarray,
) -> np.ndarray:
    """Rebuild the color image: I'_y = A'_y * (S''_B + S''_D), chroma reattached.

    The original luminance participates only in shape validation; it is kept
    in the signature so recomposition sees the same record decompose built.
    """
    require_plane(albedo, "albedo")
    require_same_size(albedo, base, "albedo and base shading")
    require_same_size(albedo, detail, "albedo and detail shading")
    require_same_size(albedo, chroma, "albedo and chroma")
    require_plane(luminance, "luminance")
    require_same_size(albedo, luminance, "albedo and luminance")
    y = np.clip(albedo * (base + detail), 0.0, 1.0)
    return apply_chroma(chroma, y)


@dataclass(frozen=True)
class RetargetResult:
    rgb: np.ndarray            # recomposed color output
    albedo: np.ndarray         # A'_y after tone mapping
    base: np.ndarray           # S''_B after depth modulation
    detail: np.ndarray         # S''_D after depth modulation
    luminance_raw: np.ndarray  # A'_y * (S''_B + S''_D) before the [0,1] clamp


def retarget(
    decomp: Decomposition, profile: DepthProfile, params: RetargetParams
) -> RetargetResult:
    """Run the full operator chain on an existing decomposition."""
    base = retarget_base(decomp.base, params)
    detail = boost_detail(decomp.detail, params)
    base, detail = apply_shading_contrast(base, detail, profile, params)
    albedo = tone_map_albedo(decomp.albedo, params)
    rgb = recompose(albedo, base, detail, decomp.chroma, decomp.luminance)
    return RetargetResult(
        rgb=rgb,
        albedo=albedo,
        base=base,
        detail=detail,
        luminance_raw=albedo * (base + detail),
    )


def enhance(
    img: np.ndarray,
    profile: DepthProfile,
    decomp_params: DecompParams | None = None,
    retarget_params: RetargetParams | None = None,
) -> np.ndarray:
    """Decompose, retarget, and recompose a linear-light color image."""
    if profile.shape != img.shape[:2]:
        raise ShapeError(
            f"depth profile {profile.shape} does not match image {img.shape[:2]}"
        )
    decomp = decompose(img, decomp_params)
    return retarget(decomp, profile, retarget_params or RetargetParams()).rgb
