"""Hausdorff distances, Hausdorff middles and morphs of planar sets."""
from .boolean import (intersect_regions, region_contains_region, region_contains_shape,
                      symmetric_difference_area, union_regions)
from .critical import CriticalCandidates, critical_alphas, exact_alpha
from .geometry import Arc, Segment, relative_tolerance, tolerance_for
from .hausdorff import HausdorffResult, default_eps, directed_hausdorff, hausdorff, hausdorff_pair
from .kernels import USING_COMPILED
from .middle import morph, s_alpha, submorph_decompose, verify_theorem1
from .multimiddle import (DecisionOutcome, MagicConstants, MultiInput, approx_alpha, compute_magic_constants,
                          decide, helly_reduce, magic_instance, t_alpha)
from .region import ArcRegion, Face, Shape, area, component_count, dilate, is_convex

__version__ = "0.1.0"

__all__ = [
    "Arc", "ArcRegion", "CriticalCandidates", "DecisionOutcome", "Face", "HausdorffResult", "MagicConstants",
    "MultiInput", "Segment", "Shape", "USING_COMPILED", "approx_alpha", "area", "component_count",
    "compute_magic_constants", "critical_alphas", "decide", "default_eps", "dilate", "directed_hausdorff",
    "exact_alpha", "hausdorff", "hausdorff_pair", "helly_reduce", "intersect_regions", "is_convex",
    "magic_instance", "morph", "region_contains_region", "region_contains_shape", "relative_tolerance",
    "s_alpha", "submorph_decompose", "symmetric_difference_area", "t_alpha", "tolerance_for",
    "union_regions", "verify_theorem1",
]
