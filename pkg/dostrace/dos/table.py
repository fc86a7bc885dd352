"""Laplace samples of ν and the cross-estimator table over heat times."""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

from ..configs.defaults import N_EXACT
from ..lattice.balls import weight_field
from ..models.enums import EstimatorMethod, TraceMode
from ..models.geometry import LatticeGeometry, WeightField
from ..models.results import EstimatorResult
from ..operators.hermitian import SparseHermitianOperator, spectral_bounds
from ..operators.traces import ProbeEnsemble
from ..strategies.base import ExtendedLimitSurrogate
from .estimators import (
    DEFAULT_S_GRID,
    ball_average_heat_trace,
    default_eps_grid,
    dixmier_side,
    epsilon_formula,
    s_limit_formula,
)

logger = logging.getLogger(__name__)

ALL_ESTIMATORS = tuple(EstimatorMethod)


def laplace_samples(
    op: SparseHermitianOperator,
    geom: LatticeGeometry,
    t_list: Sequence[float],
    radii: Optional[Sequence[float]] = None,
    mode: TraceMode = TraceMode.EXACT,
    probes: Optional[ProbeEnsemble] = None,
    n_exact: int = N_EXACT,
) -> List[Tuple[float, float]]:
    """(t, ∫e^{−tλ}dν) pairs from ball averages."""
    return [
        (float(t), ball_average_heat_trace(op, geom, t, radii, mode, probes, n_exact).value)
        for t in t_list
    ]


def _prepare(op: SparseHermitianOperator, mode: TraceMode, n_exact: int) -> None:
    # shared caches are filled before worker threads start
    spectral_bounds(op)
    if TraceMode(mode) == TraceMode.EXACT or op.n <= n_exact:
        op.eigh(n_exact)


def three_way_table(
    op: SparseHermitianOperator,
    geom: LatticeGeometry,
    t_list: Sequence[float],
    estimators: Sequence[EstimatorMethod] = ALL_ESTIMATORS,
    radii: Optional[Sequence[float]] = None,
    weights: Optional[WeightField] = None,
    s_grid: Sequence[float] = DEFAULT_S_GRID,
    surrogate: Optional[ExtendedLimitSurrogate] = None,
    mode: TraceMode = TraceMode.EXACT,
    probes: Optional[ProbeEnsemble] = None,
    workers: Optional[int] = None,
    n_exact: int = N_EXACT,
) -> List[EstimatorResult]:
    """
    Every requested estimator at every heat time.

    Heat times are evaluated in parallel; rows come back ordered by t and then
    by estimator, whatever the worker count.

    Args:
        op: The operator
        geom: Its lattice
        t_list: Heat times
        estimators: Subset of the four estimators
        radii: Ball radii (the ε grid is matched to them)
        weights: Weight field (built from the geometry by default)
        s_grid: Exponents for the s-limit
        surrogate: Extended-limit surrogate for the Dixmier side
        mode: Exact or stochastic traces
        probes: Probe ensemble for stochastic traces
        workers: Thread count (CPU count by default)
        n_exact: Largest instance diagonalised

    Returns:
        One EstimatorResult per (t, estimator)
    """
    estimators = [EstimatorMethod(e) for e in estimators]
    weights = weights if weights is not None else weight_field(geom)
    eps_grid = default_eps_grid(geom, radii)
    _prepare(op, mode, n_exact)

    def row(t: float) -> List[EstimatorResult]:
        out = []
        for method in estimators:
            if method == EstimatorMethod.BALL_AVERAGE:
                out.append(ball_average_heat_trace(op, geom, t, radii, mode, probes, n_exact))
            elif method == EstimatorMethod.EPSILON:
                out.append(epsilon_formula(op, weights, t, eps_grid, mode, probes, n_exact))
            elif method == EstimatorMethod.S_LIMIT:
                out.append(s_limit_formula(op, weights, t, s_grid, mode, probes, n_exact))
            else:
                out.append(dixmier_side(op, weights, t, surrogate, n_exact))
        return out

    workers = workers or os.cpu_count() or 1
    logger.info("Estimator table over t=%s with %d workers", list(t_list), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(row, t_list))
    return [result for results in rows for result in results]
