"""The four DOS estimators, DOS functionals, KPM histograms and closed-form oracles."""

from .estimators import (
    SFamilyFit,
    ball_average_heat_trace,
    batch_standard_error,
    bulk_length,
    check_s_grid,
    default_eps_grid,
    default_radii,
    dixmier_from_kernel,
    dixmier_side,
    dixmier_side_function,
    epsilon_formula,
    extrapolate_s_family,
    masked_heat_sums,
    richardson_extrapolate,
    s_family,
    s_limit_formula,
)
from .functionals import ChebyshevFunction, dos_functional, jackson_kernel, kpm_dos_histogram
from .oracles import dft_heat_diagonal, lattice_dos_cdf, lattice_dos_density
from .table import laplace_samples, three_way_table

__all__ = [
    "ChebyshevFunction",
    "SFamilyFit",
    "ball_average_heat_trace",
    "batch_standard_error",
    "bulk_length",
    "check_s_grid",
    "default_eps_grid",
    "default_radii",
    "dft_heat_diagonal",
    "dixmier_from_kernel",
    "dixmier_side",
    "dixmier_side_function",
    "dos_functional",
    "epsilon_formula",
    "extrapolate_s_family",
    "jackson_kernel",
    "kpm_dos_histogram",
    "laplace_samples",
    "lattice_dos_cdf",
    "lattice_dos_density",
    "masked_heat_sums",
    "richardson_extrapolate",
    "s_family",
    "s_limit_formula",
    "three_way_table",
]
