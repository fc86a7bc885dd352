"""Named growth profiles, accepted by ``propd --preset``."""

from typing import Dict

from ..growth.profiles import ExpProfile, GrowthProfile, PowerProfile, StretchedExpProfile

# Euclidean spaces R^d (unit-ball constant dropped; it cancels in every ratio)
EUCLIDEAN_2D = PowerProfile(2)
EUCLIDEAN_3D = PowerProfile(3)
EUCLIDEAN_4D = PowerProfile(4)

# Subexponential growth exp(r^0.4), still admitted by Property (D)
STRETCHED_04 = StretchedExpProfile(0.4)

# Hyperbolic plane of curvature -1 grows like e^{r}; e^{2r} models H^3
HYPERBOLIC_2 = ExpProfile(1.0)
HYPERBOLIC_3 = ExpProfile(2.0)

PROFILE_PRESETS: Dict[str, GrowthProfile] = {
    "euclidean-2d": EUCLIDEAN_2D,
    "euclidean-3d": EUCLIDEAN_3D,
    "euclidean-4d": EUCLIDEAN_4D,
    "stretched-0.4": STRETCHED_04,
    "hyperbolic-2": HYPERBOLIC_2,
    "hyperbolic-3": HYPERBOLIC_3,
}
