"""Library defaults and named profiles and geometries."""

from .geometries import (
    CHAIN_1024_DIRICHLET,
    CHAIN_4096,
    GEOMETRY_PRESETS,
    SQUARE_64,
    SQUARE_64_L1,
)
from .profiles import (
    EUCLIDEAN_2D,
    EUCLIDEAN_3D,
    EUCLIDEAN_4D,
    HYPERBOLIC_2,
    HYPERBOLIC_3,
    PROFILE_PRESETS,
    STRETCHED_04,
)

__all__ = [
    "EUCLIDEAN_2D",
    "EUCLIDEAN_3D",
    "EUCLIDEAN_4D",
    "STRETCHED_04",
    "HYPERBOLIC_2",
    "HYPERBOLIC_3",
    "PROFILE_PRESETS",
    "CHAIN_4096",
    "CHAIN_1024_DIRICHLET",
    "SQUARE_64",
    "SQUARE_64_L1",
    "GEOMETRY_PRESETS",
]
