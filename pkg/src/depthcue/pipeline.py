"""Batch orchestration: per-image runs, the ablation ladder, benchmarks."""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import cv2
import numpy as np

from . import io, metrics, parallax, testcards
from .config import PipelineConfig
from .decompose import decompose
from .depth import (
    ContinuousProfile,
    DepthProfile,
    TwoLayerProfile,
    depth_from_file,
    depth_from_prior,
    resample_depth,
    two_layer_from_map,
)
from .errors import DataError
from .guided import GuidedFilterParams, guided_filter_fast, guided_filter_reference
from .image import luminance_of, resize_bilinear, srgb_encode
from .parallax import HeadPose, build_layers, export_stack, render_trajectory, sinusoidal_poses
from .retarget import AblationToggles, retarget

STAGES = ("load", "depth", "decompose", "retarget", "parallax")

ABLATION_LABELS = ("original", "base", "base+detail", "+contrast", "full")


def build_profile(nearness: np.ndarray, kind: str) -> DepthProfile:
    """Profile the nearness map; two-layer falls back to continuous when flat."""
    if kind == "two-layer":
        try:
            return two_layer_from_map(nearness)
        except DataError:
            pass  # no separation: degrade to the continuous profile
    return ContinuousProfile(nearness)


def _foreground_mask(profile: DepthProfile) -> np.ndarray:
    if isinstance(profile, TwoLayerProfile):
        return profile.mask
    return profile.nearness_field() >= 0.5


@dataclass
class ImageResult:
    entry: dict
    ok: bool


def process_image(path: str, cfg: PipelineConfig) -> ImageResult:
    timings: dict[str, float] = {}
    t_total = time.perf_counter()

    t = time.perf_counter()
    img = io.load_image(path)
    if img.ndim == 2:
        img = np.dstack([img, img, img])
    if cfg.resize is not None:
        img = resize_bilinear(img, cfg.resize[0], cfg.resize[1])
    timings["load"] = time.perf_counter() - t

    t = time.perf_counter()
    h, w = img.shape[:2]
    if cfg.depth is not None:
        nearness = depth_from_file(cfg.depth, cfg.depth_kind)
        if nearness.shape != (h, w):
            nearness = resample_depth(nearness, w, h)
    else:
        nearness = depth_from_prior(w, h, cfg.depth_prior)
    profile = build_profile(nearness, cfg.profile)
    timings["depth"] = time.perf_counter() - t

    t = time.perf_counter()
    decomp = decompose(img, cfg.decomp)
    timings["decompose"] = time.perf_counter() - t

    t = time.perf_counter()
    result = retarget(decomp, profile, cfg.retarget)
    timings["retarget"] = time.perf_counter() - t

    stem = os.path.splitext(os.path.basename(path))[0]
    out_path = os.path.join(cfg.out_dir, f"{stem}_enhanced.png")
    io.save_image(result.rgb, out_path, cfg.bit_depth)

    t = time.perf_counter()
    stack_dir = None
    n_frames = 0
    if cfg.export_layers or cfg.trajectory:
        stack = build_layers(result.rgb, profile, cfg.parallax)
        if cfg.export_layers:
            stack_dir = os.path.join(cfg.out_dir, f"{stem}_layers")
            export_stack(stack, stack_dir)
        if cfg.trajectory:
            poses = _parse_trajectory(cfg.trajectory)
            frames = render_trajectory(stack, poses, cfg.parallax)
            traj_dir = io.ensure_dir(os.path.join(cfg.out_dir, f"{stem}_frames"))
            for i, frame in enumerate(frames):
                io.save_image(frame, os.path.join(traj_dir, f"frame_{i:04d}.png"), 8)
            n_frames = len(frames)
    timings["parallax"] = time.perf_counter() - t
    timings["total"] = time.perf_counter() - t_total

    fg = _foreground_mask(profile)
    entry = {
        "input": path,
        "output": out_path,
        "layers": stack_dir,
        "frames": n_frames,
        "profile": "two-layer" if isinstance(profile, TwoLayerProfile) else "continuous",
        "timings_s": timings,
        "metrics": {
            "rms_contrast_in": metrics.rms_contrast(decomp.luminance),
            "rms_contrast_out": metrics.rms_contrast(luminance_of(result.rgb)),
            "rms_contrast_out_preclamp": metrics.rms_contrast(result.luminance_raw),
            "detail_variance_fg_in": metrics.region_variance(decomp.detail, fg),
            "detail_variance_fg_out": metrics.region_variance(result.detail, fg),
            "psnr_vs_input": metrics.psnr(img, result.rgb),
        },
    }
    return ImageResult(entry=entry, ok=True)


def _parse_trajectory(spec: str) -> list[HeadPose]:
    kind, _, arg = spec.partition(":")
    if kind == "sin":
        return sinusoidal_poses(int(arg))
    if kind == "file":
        pairs = io.read_json(arg)
        return [HeadPose(float(p[0]), float(p[1])) for p in pairs]
    raise ValueError(f"unknown trajectory spec: {spec}")


def run(cfg: PipelineConfig) -> int:
    """Process every input image; returns a process exit status."""
    cfg.validate()
    if not cfg.inputs:
        raise ValueError("no inputs given")
    for p in cfg.inputs:
        if not os.path.exists(p):
            raise ValueError(f"input does not exist: {p}")
    if cfg.depth is not None and not os.path.exists(cfg.depth):
        raise ValueError(f"depth file does not exist: {cfg.depth}")
    io.ensure_dir(cfg.out_dir)

    entries: list[dict] = []
    failures = 0
    if cfg.threads == 1:
        results = [_safe_process(p, cfg) for p in cfg.inputs]
    else:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(lambda p: _safe_process(p, cfg), cfg.inputs))
    for res in results:
        entries.append(res.entry)
        if not res.ok:
            failures += 1

    report = {"images": entries, "failed": failures}
    io.write_json(report, os.path.join(cfg.out_dir, "report.json"))
    return 0 if failures == 0 else 1


def _safe_process(path: str, cfg: PipelineConfig) -> ImageResult:
    try:
        return process_image(path, cfg)
    except Exception as exc:  # per-image failures must not kill the batch
        return ImageResult(entry={"input": path, "error": f"{type(exc).__name__}: {exc}"}, ok=False)


def run_ablation(cfg: PipelineConfig) -> int:
    """Render the five cumulative sub-operator configurations as one panel.

    Ladder: all off, then base shading, detail boost, shading contrast, and
    albedo contrast enabled one after another; the first panel reproduces
    the input image, the last the full result.
    """
    cfg.validate()
    if not cfg.inputs:
        raise ValueError("no inputs given")
    path = cfg.inputs[0]
    if not os.path.exists(path):
        raise ValueError(f"input does not exist: {path}")
    io.ensure_dir(cfg.out_dir)

    img = io.load_image(path)
    if img.ndim == 2:
        img = np.dstack([img, img, img])
    if cfg.resize is not None:
        img = resize_bilinear(img, cfg.resize[0], cfg.resize[1])
    h, w = img.shape[:2]
    if cfg.depth is not None:
        nearness = depth_from_file(cfg.depth, cfg.depth_kind)
        if nearness.shape != (h, w):
            nearness = resample_depth(nearness, w, h)
    else:
        nearness = depth_from_prior(w, h, cfg.depth_prior)
    profile = build_profile(nearness, cfg.profile)
    fg = _foreground_mask(profile)

    decomp = decompose(img, cfg.decomp)
    panels = []
    configs = []
    for step in range(5):
        params = cfg.retarget.with_ablation(AblationToggles.cumulative(step))
        result = retarget(decomp, profile, params)
        panels.append(result.rgb)
        configs.append(
            {
                "label": ABLATION_LABELS[step],
                "enabled": step,
                "psnr_vs_input": metrics.psnr(img, result.rgb),
                "rms_contrast": metrics.rms_contrast(luminance_of(result.rgb)),
                "rms_contrast_preclamp": metrics.rms_contrast(result.luminance_raw),
                "detail_variance_fg": metrics.region_variance(result.detail, fg),
            }
        )

    panel_img = compose_panel(panels, list(ABLATION_LABELS))
    stem = os.path.splitext(os.path.basename(path))[0]
    panel_path = os.path.join(cfg.out_dir, f"{stem}_ablation.png")
    cv2.imwrite(panel_path, panel_img[:, :, ::-1])
    io.write_json(
        {"input": path, "panel": panel_path, "configs": configs},
        os.path.join(cfg.out_dir, f"{stem}_ablation.json"),
    )
    return 0


def compose_panel(images: list[np.ndarray], labels: list[str], header: int = 28) -> np.ndarray:
    """Horizontal panel of 8-bit sRGB-encoded tiles with text headers."""
    tiles = []
    for img, label in zip(images, labels):
        tile8 = np.rint(srgb_encode(np.clip(img, 0, 1)) * 255).astype(np.uint8)
        strip = np.full((header, tile8.shape[1], 3), 24, dtype=np.uint8)
        cv2.putText(
            strip, label, (6, header - 9), cv2.FONT_HERSHEY_SIMPLEX, 0.5, (235, 235, 235), 1
        )
        tiles.append(np.vstack([strip, tile8]))
    return np.hstack(tiles)


def run_bench(which: str) -> dict:
    """Median-of-5 wall times for the 1080p workloads, machine-readable."""
    if which == "guided-filter":
        return _bench_guided_filter()
    if which == "pipeline":
        return _bench_pipeline()
    raise ValueError(f"unknown bench target: {which}")


def _median_of(fn, runs: int = 5) -> tuple[float, list[float]]:
    times = []
    for _ in range(runs):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return float(np.median(times)), times


def _bench_guided_filter() -> dict:
    rng = np.random.default_rng(0)
    small_guide = rng.random((64, 64))
    small_src = rng.random((64, 64))
    p_small = GuidedFilterParams(radius=4, epsilon=1e-2)
    t_ref, _ = _median_of(lambda: guided_filter_reference(small_guide, small_src, p_small))
    t_fast, _ = _median_of(lambda: guided_filter_fast(small_guide, small_src, p_small))
    diff = float(
        np.max(
            np.abs(
                guided_filter_reference(small_guide, small_src, p_small)
                - guided_filter_fast(small_guide, small_src, p_small)
            )
        )
    )
    plane = testcards.scene_1080p()[0][:, :, 1]
    p_big = GuidedFilterParams(radius=16, epsilon=1e-2)
    median, times = _median_of(lambda: guided_filter_fast(plane, plane, p_big))
    return {
        "which": "guided-filter",
        "sanity_64": {"reference_s": t_ref, "fast_s": t_fast, "max_abs_diff": diff},
        "fullhd_radius16": {"median_s": median, "runs_s": times},
    }


def _bench_pipeline() -> dict:
    rgb, nearness = testcards.scene_1080p()
    profile = ContinuousProfile(nearness)
    cfg = PipelineConfig()

    def once() -> dict[str, float]:
        t0 = time.perf_counter()
        stage = {}
        t = time.perf_counter()
        img = rgb.copy()  # stands in for decode; bench is synthetic
        stage["load"] = time.perf_counter() - t
        t = time.perf_counter()
        prof = profile
        stage["depth"] = time.perf_counter() - t
        t = time.perf_counter()
        decomp = decompose(img, cfg.decomp)
        stage["decompose"] = time.perf_counter() - t
        t = time.perf_counter()
        result = retarget(decomp, prof, cfg.retarget)
        stage["retarget"] = time.perf_counter() - t
        t = time.perf_counter()
        build_layers(result.rgb, prof, cfg.parallax)
        stage["parallax"] = time.perf_counter() - t
        stage["total"] = time.perf_counter() - t0
        return stage

    runs = [once() for _ in range(5)]
    totals = [r["total"] for r in runs]
    order = int(np.argsort(totals)[len(totals) // 2])
    return {"which": "pipeline", "median_run": runs[order], "runs": runs}
