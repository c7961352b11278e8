"""Run configuration: dataclass bundle plus flat dotted-key JSON loading.

Config files are JSON objects whose keys mirror parameter names, e.g.
``{"retarget.detail_gain": 2.0, "parallax.layer_count": 6}``. CLI flags
override file values.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .decompose import DecompParams
from .parallax import ParallaxParams
from .retarget import AblationToggles, RetargetParams


@dataclass
class PipelineConfig:
    inputs: list[str] = field(default_factory=list)
    depth: str | None = None
    depth_kind: str = "disparity"
    depth_prior: str = "vertical-gradient"
    profile: str = "continuous"
    resize: tuple[int, int] | None = None
    out_dir: str = "out"
    bit_depth: int = 8
    threads: int = 1
    export_layers: bool = False
    trajectory: str | None = None
    decomp: DecompParams = field(default_factory=DecompParams)
    retarget: RetargetParams = field(default_factory=RetargetParams)
    parallax: ParallaxParams = field(default_factory=ParallaxParams)

    def validate(self) -> None:
        if self.profile not in ("continuous", "two-layer"):
            raise ValueError(f"unknown profile kind: {self.profile}")
        if self.depth_kind not in ("disparity", "depth"):
            raise ValueError(f"unknown depth kind: {self.depth_kind}")
        if self.bit_depth not in (8, 16):
            raise ValueError("bit_depth must be 8 or 16")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


_TOP_LEVEL_KEYS = {
    "inputs": list,
    "depth": str,
    "depth_kind": str,
    "depth_prior": str,
    "profile": str,
    "out_dir": str,
    "bit_depth": int,
    "threads": int,
    "export_layers": bool,
    "trajectory": str,
}


def parse_resize(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        size = (int(w), int(h))
    except ValueError as exc:
        raise ValueError(f"resize must look like 1920x1080, got {text!r}") from exc
    if size[0] < 1 or size[1] < 1:
        raise ValueError("resize dimensions must be positive")
    return size


def parse_ablation(text: str) -> AblationToggles:
    """Parse four comma-separated booleans in sub-operator pipeline order."""
    parts = [p.strip().lower() for p in text.split(",")]
    if len(parts) != 4:
        raise ValueError("ablation needs 4 comma-separated booleans")
    truthy = {"1": True, "true": True, "on": True, "0": False, "false": False, "off": False}
    try:
        flags = [truthy[p] for p in parts]
    except KeyError as exc:
        raise ValueError(f"bad ablation flag: {exc.args[0]!r}") from exc
    return AblationToggles(*flags)


def config_from_dotted(mapping: dict, base: PipelineConfig | None = None) -> PipelineConfig:
    cfg = base or PipelineConfig()
    for key, value in mapping.items():
        cfg = _apply_key(cfg, key, value)
    cfg.validate()
    return cfg


def _apply_key(cfg: PipelineConfig, key: str, value) -> PipelineConfig:
    if key == "resize":
        if isinstance(value, str):
            cfg.resize = parse_resize(value)
        else:
            cfg.resize = (int(value[0]), int(value[1]))
        return cfg
    if key in _TOP_LEVEL_KEYS:
        setattr(cfg, key, value)
        return cfg
    head, _, rest = key.partition(".")
    if head == "decomp" and hasattr(cfg.decomp, rest):
        cfg.decomp = replace(cfg.decomp, **{rest: value})
        return cfg
    if head == "parallax" and hasattr(cfg.parallax, rest):
        cfg.parallax = replace(cfg.parallax, **{rest: value})
        return cfg
    if head == "retarget":
        if rest.startswith("ablation."):
            toggle = rest.split(".", 1)[1]
            if hasattr(cfg.retarget.ablation, toggle):
                toggles = replace(cfg.retarget.ablation, **{toggle: bool(value)})
                cfg.retarget = cfg.retarget.with_ablation(toggles)
                return cfg
        elif rest == "ablation":
            cfg.retarget = cfg.retarget.with_ablation(parse_ablation(value))
            return cfg
        elif hasattr(cfg.retarget, rest):
            cfg.retarget = replace(cfg.retarget, **{rest: value})
            return cfg
    raise ValueError(f"unknown config key: {key}")
