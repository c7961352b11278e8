"""depthcue: monocular depth-perception enhancement.

Decomposes an image into albedo and base/detail shading with a guided
filter, retargets each component under per-pixel depth weights, and builds
a layered parallax stack that a head-coupled viewer can animate.
"""

from .config import PipelineConfig, config_from_dotted
from .decompose import DecompParams, Decomposition, decompose
from .depth import (
    ContinuousProfile,
    DepthProfile,
    TwoLayerProfile,
    depth_from_file,
    depth_from_prior,
    resample_depth,
    two_layer_from_map,
)
from .guided import GuidedFilter, GuidedFilterParams, guided_filter_fast, guided_filter_reference
from .image import EPS_DIV, R_MAX, S_MAX, chroma_of, luminance_of, resize_bilinear
from .io import load_image, save_image
from .parallax import (
    HeadPose,
    Layer,
    LayerStack,
    ParallaxParams,
    build_layers,
    displacement,
    export_stack,
    flatten,
    import_stack,
    render_frame,
    render_trajectory,
    sinusoidal_poses,
)
from .retarget import (
    AblationToggles,
    RetargetParams,
    apply_shading_contrast,
    boost_detail,
    depth_weight,
    enhance,
    identity_params,
    recompose,
    retarget,
    retarget_base,
    tone_map_albedo,
)

__all__ = [
    "AblationToggles",
    "ContinuousProfile",
    "DecompParams",
    "Decomposition",
    "DepthProfile",
    "EPS_DIV",
    "GuidedFilter",
    "GuidedFilterParams",
    "HeadPose",
    "Layer",
    "LayerStack",
    "ParallaxParams",
    "PipelineConfig",
    "R_MAX",
    "RetargetParams",
    "S_MAX",
    "TwoLayerProfile",
    "apply_shading_contrast",
    "boost_detail",
    "build_layers",
    "chroma_of",
    "config_from_dotted",
    "decompose",
    "depth_from_file",
    "depth_from_prior",
    "depth_weight",
    "displacement",
    "enhance",
    "export_stack",
    "flatten",
    "guided_filter_fast",
    "guided_filter_reference",
    "identity_params",
    "import_stack",
    "load_image",
    "luminance_of",
    "recompose",
    "render_frame",
    "render_trajectory",
    "resample_depth",
    "resize_bilinear",
    "retarget",
    "retarget_base",
    "save_image",
    "sinusoidal_poses",
    "tone_map_albedo",
    "two_layer_from_map",
]

__version__ = "0.1.0"
