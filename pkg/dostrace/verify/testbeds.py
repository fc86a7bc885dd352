"""
Matrix-model testbeds for the trace identities.

Both testbeds compare two limit processes computed exactly at finite size:
the Dixmier side against the ε-cutoff side of e^{−tP}W with W = diag(1/(k+1)),
and the s-family against the ε-family of a PSD pair (A, B).
"""

import logging
from typing import Optional, Sequence

import numpy as np

from ..configs.defaults import LAST_APPROXIMANTS, N_EXACT
from ..dos.estimators import (
    DEFAULT_S_GRID,
    check_s_grid,
    dixmier_side,
    epsilon_formula,
    extrapolate_s_family,
    s_family,
)
from ..errors import ParameterError
from ..models.geometry import WeightField
from ..models.results import BridgeReport, MainTheoremReport
from ..strategies.base import ExtendedLimitSurrogate
from .matrices import in_eigenbasis, matrix_from_spec, operator_from_spec

logger = logging.getLogger(__name__)

MIN_MAIN_THEOREM_N = 256
COUNTING_RADIUS = 1e-3


def harmonic_weights(n: int) -> WeightField:
    """W = diag(1/(k+1)), k = 0..n−1."""
    return WeightField(1.0 / (np.arange(n, dtype=float) + 1.0))


def matrix_model_main_theorem(
    n: int = 4096,
    p_spec: str = "free-laplacian",
    t: float = 1.0,
    surrogate: Optional[ExtendedLimitSurrogate] = None,
    n_exact: int = N_EXACT,
) -> MainTheoremReport:
    """
    Dixmier side and ε-cutoff side of e^{−tP}W on an n-dimensional model.

    χ_{[1/m,∞)}(W) projects onto the first m coordinates, so the ε-side uses
    ε = 1/m for m = n/4, n/2, n.

    Args:
        n: Dimension, at least 256
        p_spec: Operator spec (see :func:`operator_from_spec`)
        t: Heat time
        surrogate: Extended-limit surrogate for the Dixmier side
        n_exact: Largest dimension diagonalised

    Returns:
        Both values, their convergence flags and the gap
    """
    if n < MIN_MAIN_THEOREM_N:
        raise ParameterError(f"the matrix model needs n >= {MIN_MAIN_THEOREM_N}, got {n}")
    op = operator_from_spec(p_spec, n)
    weights = harmonic_weights(n)
    eps_grid = [1.0 / m for m in (n // 4, n // 2, n)]
    eps = epsilon_formula(op, weights, t, eps_grid, n_exact=n_exact)
    dixmier = dixmier_side(op, weights, t, surrogate, n_exact)
    report = MainTheoremReport(
        n=n,
        t=t,
        p_spec=p_spec,
        dixmier_value=dixmier.value,
        epsilon_value=eps.value,
        dixmier_converged=dixmier.converged,
        epsilon_converged=eps.converged,
    )
    logger.info("Matrix model %s, n=%d, t=%g: gap %.3g", p_spec, n, t, report.gap)
    return report


def _counting(values: np.ndarray, cumulative: np.ndarray, r: float) -> float:
    """F(r) = Tr(A χ_{[r,∞)}(B)) with ``values`` decreasing."""
    count = int(np.searchsorted(-values, -r, side="right"))
    return float(cumulative[count - 1]) if count else 0.0


def _counting_check(
    values: np.ndarray, cumulative: np.ndarray, eps_value: float
) -> Optional[float]:
    """Worst |r F(r)/L − 1| for r from 16 λ_min up to 10⁻³."""
    floor = float(values[-1])
    if abs(eps_value) < 1e-12 or floor <= 0 or 16 * floor > COUNTING_RADIUS:
        return None
    radii = np.geomspace(16 * floor, COUNTING_RADIUS, 16)
    ratios = [r * _counting(values, cumulative, r) / eps_value for r in radii]
    return float(np.max(np.abs(np.array(ratios) - 1.0)))


def s_vs_epsilon_bridge(
    n: int = 100_000,
    a_spec: str = "identity",
    b_spec: str = "harmonic",
    s_grid: Sequence[float] = DEFAULT_S_GRID,
    eps_grid: Optional[Sequence[float]] = None,
) -> BridgeReport:
    """
    lim (s−1)Tr(AB^s) against lim ε Tr(Aχ_{[ε,∞)}(B)) on an exact finite model.

    B is rescaled to norm one and the scale is reported; both limits of the
    rescaled pair equal the originals divided by it. The s-family is
    extrapolated with its truncated tail fitted alongside; the ε-family takes the
    mean of its last three approximants, ε = 16/n, 4/n, 1/n by default.
    """
    a = matrix_from_spec(a_spec, n)
    b = matrix_from_spec(b_spec, n)
    values, weights = in_eigenbasis(a, b)
    scale = float(values[0])
    if scale <= 0:
        raise ParameterError(f"{b_spec} is the zero matrix")
    values = values / scale

    s_grid = check_s_grid(s_grid)
    traces = [float(np.dot(weights, values**s)) for s in s_grid]
    raw = s_family(s_grid, traces)
    fit = extrapolate_s_family(s_grid, raw, float(values[-1]))

    eps_grid = sorted(eps_grid or [16.0 / n, 4.0 / n, 1.0 / n], reverse=True)
    if any(e <= 0 for e in eps_grid):
        raise ParameterError(f"epsilon values must be positive, got {eps_grid}")
    cumulative = np.cumsum(weights)
    eps_approximants = [(eps, eps * _counting(values, cumulative, eps)) for eps in eps_grid]
    eps_value = float(np.mean([v for _, v in eps_approximants[-LAST_APPROXIMANTS:]]))

    return BridgeReport(
        n=n,
        s_value=fit.value,
        eps_value=eps_value,
        scale=scale,
        s_approximants=[(float(s), float(v)) for s, v in zip(s_grid, raw)],
        eps_approximants=eps_approximants,
        s_converged=fit.converged,
        truncation_bias=fit.truncation_bias,
        counting_check=_counting_check(values, cumulative, eps_value),
    )
