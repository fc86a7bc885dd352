"""Lattice balls, weight fields, cell decompositions and field norms."""

from .balls import (
    ball_indicator,
    ball_volume,
    distance_field,
    radius_for_epsilon,
    weight_field,
    write_field_csv,
)
from .cells import block_cells, cell_sup_norms, ell_p_infty_Linfty_norm, singleton_cells

__all__ = [
    "ball_indicator",
    "ball_volume",
    "block_cells",
    "cell_sup_norms",
    "distance_field",
    "ell_p_infty_Linfty_norm",
    "radius_for_epsilon",
    "singleton_cells",
    "weight_field",
    "write_field_csv",
]
