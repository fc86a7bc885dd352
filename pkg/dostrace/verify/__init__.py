"""Matrix-level testbeds: trace identities, the s/ε bridge and inequality fuzzing."""

from .fuzz import (
    alt_inequality_check,
    alt_inequality_fuzz,
    duhamel_fuzz,
    holder_fuzz,
    product_fuzz,
    psd_power,
    zeta_fuzz,
)
from .matrices import in_eigenbasis, matrix_from_spec, operator_from_spec, wishart
from .settings import VerifySettings
from .testbeds import harmonic_weights, matrix_model_main_theorem, s_vs_epsilon_bridge

__all__ = [
    "VerifySettings",
    "alt_inequality_check",
    "alt_inequality_fuzz",
    "duhamel_fuzz",
    "harmonic_weights",
    "holder_fuzz",
    "in_eigenbasis",
    "matrix_from_spec",
    "matrix_model_main_theorem",
    "operator_from_spec",
    "product_fuzz",
    "psd_power",
    "s_vs_epsilon_bridge",
    "wishart",
    "zeta_fuzz",
]
