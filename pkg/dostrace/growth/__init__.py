"""Volume-growth profiles and the Property (D) checker."""

from .checks import (
    check_grimaldi_ratio,
    check_property_d,
    classify_tail,
    condition1_partial_sum,
    property_c_ratio,
    shifted_surface_condition,
    surface_ratio_sequence,
    weight_at,
)
from .profiles import (
    ExpProfile,
    GrowthProfile,
    PowerProfile,
    StretchedExpProfile,
    TabulatedProfile,
    profile_from_config,
)

__all__ = [
    "GrowthProfile",
    "PowerProfile",
    "StretchedExpProfile",
    "ExpProfile",
    "TabulatedProfile",
    "profile_from_config",
    "check_grimaldi_ratio",
    "check_property_d",
    "classify_tail",
    "condition1_partial_sum",
    "property_c_ratio",
    "shifted_surface_condition",
    "surface_ratio_sequence",
    "weight_at",
]
