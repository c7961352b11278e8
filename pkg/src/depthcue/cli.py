"""Command-line batch driver.

Examples:
    depthcue --input scene.png --depth scene.pfm --depth-kind disparity \
        --profile two-layer --out results/
    depthcue --input scene.png --ablation-study --out results/
    depthcue --bench guided-filter
Exit codes: 0 success, 1 per-image failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .config import PipelineConfig, config_from_dotted, parse_ablation, parse_resize
from .errors import DataError, FormatError
from .pipeline import run, run_ablation, run_bench


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="depthcue",
        description="Depth-perception enhancement: shading/contrast retargeting "
        "plus layered motion parallax.",
    )
    ap.add_argument("--input", action="append", default=[], help="input image (repeatable)")
    ap.add_argument("--depth", help="depth/disparity file (PFM or 16-bit PNG)")
    ap.add_argument("--depth-kind", choices=["disparity", "depth"], default=None)
    ap.add_argument(
        "--depth-prior",
        choices=["vertical-gradient"],
        default=None,
        help="built-in depth estimate used when no --depth is given",
    )
    ap.add_argument("--profile", choices=["two-layer", "continuous"], default=None)
    ap.add_argument("--resize", metavar="WxH", help="resize inputs, e.g. 1920x1080")
    ap.add_argument("--out", help="output directory")
    ap.add_argument(
        "--ablation",
        metavar="a,b,c,d",
        help="sub-operator toggles: base,detail,shading-contrast,albedo-contrast",
    )
    ap.add_argument(
        "--ablation-study",
        action="store_true",
        help="render the 5-step cumulative toggle panel instead of a single run",
    )
    ap.add_argument("--export-layers", action="store_true", help="export the parallax stack")
    ap.add_argument(
        "--trajectory",
        metavar="sin:N|file:path",
        help="render a preview pose trajectory (sinusoidal or from a JSON file)",
    )
    ap.add_argument("--bench", choices=["guided-filter", "pipeline"], help="run a benchmark")
    ap.add_argument("--config", help="JSON config file with flat dotted keys")
    ap.add_argument("--threads", type=int, default=None, help="worker pool size")
    ap.add_argument("--bit-depth", type=int, choices=[8, 16], default=None)
    return ap


def config_from_args(args: argparse.Namespace) -> PipelineConfig:
    cfg = PipelineConfig()
    if args.config:
        cfg = config_from_dotted(io.read_json(args.config), cfg)
    if args.input:
        cfg.inputs = list(args.input)
    if args.depth is not None:
        cfg.depth = args.depth
    if args.depth_kind is not None:
        cfg.depth_kind = args.depth_kind
    if args.depth_prior is not None:
        cfg.depth_prior = args.depth_prior
    if args.profile is not None:
        cfg.profile = args.profile
    if args.resize is not None:
        cfg.resize = parse_resize(args.resize)
    if args.out is not None:
        cfg.out_dir = args.out
    if args.ablation is not None:
        cfg.retarget = cfg.retarget.with_ablation(parse_ablation(args.ablation))
    if args.export_layers:
        cfg.export_layers = True
    if args.trajectory is not None:
        cfg.trajectory = args.trajectory
    if args.threads is not None:
        cfg.threads = args.threads
    if args.bit_depth is not None:
        cfg.bit_depth = args.bit_depth
    cfg.validate()
    return cfg


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.bench:
            report = run_bench(args.bench)
            io.write_json(report, f"bench_{args.bench}.json")
            print(f"wrote bench_{args.bench}.json")
            return 0
        cfg = config_from_args(args)
        if args.ablation_study:
            return run_ablation(cfg)
        return run(cfg)
    except (ValueError, FormatError, DataError, FileNotFoundError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
