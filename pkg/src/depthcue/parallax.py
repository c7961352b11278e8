"""Layered 2.5D motion parallax: stack construction, rendering, export.

The enhanced image is sliced into depth-ordered layers; each layer is
translated linearly with head offset and with its nearness relative to the
fixation plane (the far-most layer, which therefore stays put), so closer
layers move faster. Disocclusions show the hole-filled far layer.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import cv2
import numpy as np

from . import io
from .depth import ContinuousProfile, DepthProfile, TwoLayerProfile
from .errors import DataError, FormatError, ShapeError
from .image import require_color, require_same_size

HOLE_FILL_MAX_ROUNDS = 256


@dataclass(frozen=True)
class HeadPose:
    """Normalized head offset; components are clamped to [-1, 1]."""

    hx: float = 0.0
    hy: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.hx) and math.isfinite(self.hy)):
            raise ValueError("head pose must be finite")
        object.__setattr__(self, "hx", min(1.0, max(-1.0, self.hx)))
        object.__setattr__(self, "hy", min(1.0, max(-1.0, self.hy)))


@dataclass(frozen=True)
class ParallaxParams:
    layer_count: int = 4
    gain_px: float = 24.0   # displacement at |nearness - fixation| = 1, |pose| = 1
    mode: str = "head_coupled"  # or "autonomous" (sinusoidal pose path)
    autonomous_frames: int = 48

    def __post_init__(self):
        if self.layer_count < 1:
            raise ValueError("layer_count must be >= 1")
        if self.gain_px < 0:
            raise ValueError("gain_px must be >= 0")
        if self.mode not in ("head_coupled", "autonomous"):
            raise ValueError(f"unknown parallax mode: {self.mode}")


@dataclass(frozen=True)
class Layer:
    color: np.ndarray    # (H, W, 3) linear light
    alpha: np.ndarray    # (H, W) in [0, 1]
    nearness: float


@dataclass(frozen=True)
class LayerStack:
    layers: tuple[Layer, ...]  # sorted far -> near, strictly ascending nearness
    width: int
    height: int
    fixation_nearness: float
    gain_px: float = 24.0

    def __post_init__(self):
        if len(self.layers) < 1:
            raise DataError("layer stack needs at least one layer")
        near = [l.nearness for l in self.layers]
        if any(b <= a for a, b in zip(near, near[1:])):
            raise DataError("layers must be strictly ascending in nearness")


def build_layers(
    img: np.ndarray, profile: DepthProfile, params: ParallaxParams | None = None
) -> LayerStack:
    """Slice an image into depth layers; far-most layer is hole-filled."""
    params = params or ParallaxParams()
    require_color(img)
    if profile.shape != img.shape[:2]:
        raise ShapeError(
            f"depth profile {profile.shape} does not match image {img.shape[:2]}"
        )
    h, w = img.shape[:2]

    members: list[tuple[np.ndarray, float]] = []
    if isinstance(profile, TwoLayerProfile):
        members.append((~profile.mask, profile.bg_nearness))
        members.append((profile.mask, profile.fg_nearness))
    else:
        n = params.layer_count
        d = profile.nearness_field()
        bins = np.minimum((d * n).astype(np.intp), n - 1)
        for b in range(n):
            mask = bins == b
            if mask.any():
                members.append((mask, float(d[mask].mean())))
    members = [m for m in members if m[0].any()]
    members.sort(key=lambda m: m[1])

    layers = []
    for idx, (mask, nearness) in enumerate(members):
        alpha = mask.astype(np.float64)
        color = np.where(mask[..., None], img, 0.0)
        if idx == 0:
            color = fill_holes(img, mask)
            alpha = np.ones((h, w))
        layers.append(Layer(color=color, alpha=alpha, nearness=nearness))

    return LayerStack(
        layers=tuple(layers),
        width=w,
        height=h,
        fixation_nearness=layers[0].nearness,
        gain_px=params.gain_px,
    )


def fill_holes(img: np.ndarray, valid: np.ndarray) -> np.ndarray:
    """Diffuse valid colors into invalid pixels (iterative 4-neighbor mean).

    Diffusion round d assigns each pixel at L1 distance d from the valid
    region the mean of its already-settled (distance d-1) 4-neighbors, so
    the rounds are processed ring by ring over a distance transform instead
    of sweeping the full frame per round. Runs to convergence or
    HOLE_FILL_MAX_ROUNDS rings; pixels beyond that take the mean valid
    color so the far layer always has full coverage.
    """
    color = np.where(valid[..., None], img, 0.0)
    if valid.all():
        return color
    if not valid.any():
        raise DataError("cannot hole-fill a fully empty layer")
    h, w = valid.shape
    dist = cv2.distanceTransform((~valid).astype(np.uint8), cv2.DIST_L1, 3)
    dist = dist.astype(np.intp)
    flat = color.reshape(-1, 3)
    dflat = dist.ravel()
    max_ring = min(int(dist.max()), HOLE_FILL_MAX_ROUNDS)
    for d in range(1, max_ring + 1):
        idx = np.nonzero(dflat == d)[0]
        if idx.size == 0:
            continue
        y, x = idx // w, idx % w
        acc = np.zeros((idx.size, 3), dtype=np.float64)
        cnt = np.zeros(idx.size, dtype=np.float64)
        for dy, dx in ((-1, 0), (0, -1), (0, 1), (1, 0)):
            ny, nx = y + dy, x + dx
            ok = (ny >= 0) & (ny < h) & (nx >= 0) & (nx < w)
            nidx = np.where(ok, ny * w + nx, 0)
            donor = ok & (dflat[nidx] == d - 1)
            acc[donor] += flat[nidx[donor]]
            cnt[donor] += 1.0
        flat[idx] = acc / cnt[:, None]
    if int(dist.max()) > HOLE_FILL_MAX_ROUNDS:
        flat[dflat > HOLE_FILL_MAX_ROUNDS] = img[valid].mean(axis=0)
    return flat.reshape(h, w, 3)


def displacement(
    layer_nearness: float,
    pose: HeadPose,
    params: ParallaxParams,
    fixation: float,
) -> tuple[float, float]:
    """Pixel displacement, linear in head offset and in relative nearness."""
    rel = layer_nearness - fixation
    return params.gain_px * pose.hx * rel, params.gain_px * pose.hy * rel


def _translate_bilinear(planes: np.ndarray, dx: float, dy: float) -> np.ndarray:
    """Translate (H, W, C) content by (dx, dy) with bilinear subpixel sampling.

    Content moves by +dx/+dy; regions sampled from outside the source are
    zero. Integer offsets reduce to an exact copy.
    """
    ix = math.floor(dx)
    iy = math.floor(dy)
    fx = dx - ix
    fy = dy - iy
    t00 = _shift_planes(planes, iy, ix)
    if fx == 0.0 and fy == 0.0:
        return t00
    t01 = _shift_planes(planes, iy, ix + 1)
    t10 = _shift_planes(planes, iy + 1, ix)
    t11 = _shift_planes(planes, iy + 1, ix + 1)
    top = t00 + fx * (t01 - t00)
    bot = t10 + fx * (t11 - t10)
    return top + fy * (bot - top)


def _shift_planes(arr: np.ndarray, dy: int, dx: int) -> np.ndarray:
    out = np.zeros_like(arr)
    h, w = arr.shape[:2]
    if abs(dy) >= h or abs(dx) >= w:
        return out
    ys, yd = (slice(0, h - dy), slice(dy, h)) if dy >= 0 else (slice(-dy, h), slice(0, h + dy))
    xs, xd = (slice(0, w - dx), slice(dx, w)) if dx >= 0 else (slice(-dx, w), slice(0, w + dx))
    out[yd, xd] = arr[ys, xs]
    return out


def render_frame(
    stack: LayerStack, pose: HeadPose, params: ParallaxParams | None = None
) -> np.ndarray:
    """Composite the stack far-to-near with per-layer parallax translation.

    Colors are premultiplied before the subpixel shift so feathered or
    shifted alpha never bleeds zero-color pixels into the output.
    """
    params = params or ParallaxParams(gain_px=stack.gain_px)
    out = np.zeros((stack.height, stack.width, 3), dtype=np.float64)
    for layer in stack.layers:
        dx, dy = displacement(layer.nearness, pose, params, stack.fixation_nearness)
        premul = np.dstack([layer.color * layer.alpha[..., None], layer.alpha])
        shifted = _translate_bilinear(premul, dx, dy)
        color, alpha = shifted[:, :, :3], shifted[:, :, 3:4]
        out = color + (1.0 - alpha) * out
    return out


def flatten(stack: LayerStack) -> np.ndarray:
    """The stack composited with zero displacement everywhere."""
    return render_frame(stack, HeadPose(0.0, 0.0))


def render_trajectory(
    stack: LayerStack, poses: list[HeadPose], params: ParallaxParams | None = None
) -> list[np.ndarray]:
    return [render_frame(stack, pose, params) for pose in poses]


def sinusoidal_poses(count: int, cycles: float = 1.0, amplitude: float = 1.0) -> list[HeadPose]:
    """Autonomous horizontal sweep: pose_i = (A*sin(2*pi*cycles*i/count), 0)."""
    return [
        HeadPose(amplitude * math.sin(2.0 * math.pi * cycles * i / count), 0.0)
        for i in range(count)
    ]


MANIFEST_NAME = "manifest.json"


def export_stack(stack: LayerStack, directory: str) -> dict:
    """Write per-layer RGBA PNGs plus manifest.json; returns the manifest."""
    os.makedirs(directory, exist_ok=True)
    entries = []
    for i, layer in enumerate(stack.layers):
        fname = f"layer_{i:02d}.png"
        io.save_rgba(layer.color, layer.alpha, os.path.join(directory, fname))
        entries.append({"file": fname, "nearness": layer.nearness})
    manifest = {
        "width": stack.width,
        "height": stack.height,
        "fixation_nearness": stack.fixation_nearness,
        "gain_px": stack.gain_px,
        "layers": entries,
    }
    io.write_json(manifest, os.path.join(directory, MANIFEST_NAME))
    return manifest


def import_stack(directory: str) -> LayerStack:
    """Load an exported stack back; validates the manifest schema."""
    manifest = io.read_json(os.path.join(directory, MANIFEST_NAME))
    for key in ("width", "height", "fixation_nearness", "gain_px", "layers"):
        if key not in manifest:
            raise FormatError(f"manifest missing key: {key}")
    near = [entry["nearness"] for entry in manifest["layers"]]
    if any(b <= a for a, b in zip(near, near[1:])):
        raise FormatError("manifest layers must be sorted ascending by nearness")
    layers = []
    for entry in manifest["layers"]:
        color, alpha = io.load_rgba(os.path.join(directory, entry["file"]))
        require_same_size(color, alpha)
        layers.append(Layer(color=color, alpha=alpha, nearness=float(entry["nearness"])))
    return LayerStack(
        layers=tuple(layers),
        width=int(manifest["width"]),
        height=int(manifest["height"]),
        fixation_nearness=float(manifest["fixation_nearness"]),
        gain_px=float(manifest["gain_px"]),
    )
