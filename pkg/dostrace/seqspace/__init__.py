"""Singular sequences, Lorentz quasinorms and Dixmier-trace estimation."""

from .dixmier import dixmier_estimate, log_cesaro_means, order_eigenvalues
from .io import generate_sequence, read_sequence, write_sequence
from .lorentz import decreasing_rearrangement, direct_sum_singular_values, lorentz_quasinorm
from .zeta import (
    holder_weak_strong_check,
    product_singular_value_check,
    random_sequence,
    riemann_zeta,
    zeta_inequality_check,
    zeta_inequality_fuzz,
)

__all__ = [
    "decreasing_rearrangement",
    "direct_sum_singular_values",
    "dixmier_estimate",
    "generate_sequence",
    "holder_weak_strong_check",
    "log_cesaro_means",
    "lorentz_quasinorm",
    "order_eigenvalues",
    "product_singular_value_check",
    "random_sequence",
    "read_sequence",
    "riemann_zeta",
    "write_sequence",
    "zeta_inequality_check",
    "zeta_inequality_fuzz",
]
