"""Sparse Hermitian operators, heat semigroups, weighted traces and graded pairs."""

from .commutators import (
    commutator_with_multiplier,
    duhamel_residual,
    trace_norm_diagnostic,
    trace_norm_growth,
)
from .dirac import GradedDiracPair, build_hofstadter_dirac, magnetic_laplacian, parse_flux
from .heat import (
    HeatApplier,
    chebyshev_function_apply,
    chebyshev_series_apply,
    heat_apply,
    heat_chebyshev_coefficients,
)
from .hermitian import (
    SparseHermitianOperator,
    build_lattice_laplacian,
    build_schrodinger,
    export_matrix_market,
    gershgorin_bounds,
    integrated_dos,
    spectral_bounds,
)
from .traces import ProbeEnsemble, heat_diagonal, weighted_heat_trace

__all__ = [
    "GradedDiracPair",
    "HeatApplier",
    "ProbeEnsemble",
    "SparseHermitianOperator",
    "build_hofstadter_dirac",
    "build_lattice_laplacian",
    "build_schrodinger",
    "chebyshev_function_apply",
    "chebyshev_series_apply",
    "commutator_with_multiplier",
    "duhamel_residual",
    "export_matrix_market",
    "gershgorin_bounds",
    "heat_apply",
    "heat_chebyshev_coefficients",
    "heat_diagonal",
    "integrated_dos",
    "magnetic_laplacian",
    "parse_flux",
    "spectral_bounds",
    "trace_norm_diagnostic",
    "trace_norm_growth",
    "weighted_heat_trace",
]
