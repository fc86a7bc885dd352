"""The four DOS limit processes: ball averages, ε-cutoffs, the s-limit and the Dixmier side."""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..configs.defaults import (
    DIXMIER_BULK_MARGIN,
    DIXMIER_MIN_TERMS,
    LAST_APPROXIMANTS,
    N_EXACT,
    RELATIVE_SPREAD,
)
from ..errors import CapabilityError, GeometryError, InsufficientDataError, ParameterError
from ..lattice.balls import ball_indicator, ball_volume, radius_for_epsilon
from ..models.enums import EstimatorMethod, HeatMethod, TraceMode
from ..models.geometry import LatticeGeometry, WeightField
from ..models.results import EstimatorResult, relative_deviation
from ..operators.heat import HeatApplier
from ..operators.hermitian import SparseHermitianOperator, spectral_bounds
from ..operators.traces import PROBE_BLOCK, ProbeEnsemble, heat_diagonal
from ..seqspace.dixmier import dixmier_estimate, order_eigenvalues
from ..strategies.base import ExtendedLimitSurrogate
from ..strategies.surrogates import LogExtrapolationSurrogate, dyadic_indices

logger = logging.getLogger(__name__)

BATCH = 32
DEFAULT_S_GRID = (1.4, 1.2, 1.1, 1.05)

Weights = Union[WeightField, np.ndarray]


def default_radii(geom: LatticeGeometry) -> List[float]:
    """Guard radius and its halves, e.g. {256, 512, 1024} on a 4096-site chain."""
    top = geom.guard_radius
    return [top / 4, top / 2, top]


def _weight_values(weights: Weights) -> np.ndarray:
    if isinstance(weights, WeightField):
        return weights.values
    values = np.asarray(weights, dtype=float).ravel()
    if np.any(values < 0) or not np.all(np.isfinite(values)):
        raise ParameterError("weights must be finite and non-negative")
    return values


def batch_standard_error(values: np.ndarray, batch: int = BATCH) -> float:
    """Standard error of the mean from contiguous batch means."""
    n_batches = values.size // batch
    if n_batches < 2:
        return float(np.std(values, ddof=1) / np.sqrt(values.size)) if values.size > 1 else 0.0
    means = values[: n_batches * batch].reshape(n_batches, batch).mean(axis=1)
    return float(np.std(means, ddof=1) / np.sqrt(n_batches))


def _finish(
    method: EstimatorMethod,
    approximants: List[Tuple[float, float]],
    t: float,
    std_error: float = 0.0,
    **extras,
) -> EstimatorResult:
    """Mean of the last three approximants; converged when they agree to 1%."""
    tail = [v for _, v in approximants[-LAST_APPROXIMANTS:]]
    value = float(np.mean(tail))
    spread = relative_deviation(tail)
    converged = spread < RELATIVE_SPREAD
    if not converged:
        logger.warning(
            "%s at t=%g did not converge (relative spread %.3g)", method.value, t, spread
        )
    return EstimatorResult(
        method=method,
        value=value,
        approximants=approximants,
        converged=converged,
        std_error=std_error,
        t=t,
        extras={"spread": spread, **extras},
    )


def masked_heat_sums(
    op: SparseHermitianOperator,
    t: float,
    weights: Sequence[np.ndarray],
    mode: TraceMode = TraceMode.EXACT,
    probes: Optional[ProbeEnsemble] = None,
    applier: Optional[HeatApplier] = None,
    n_exact: int = N_EXACT,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Tr(e^{−tP} M_g) for several weights g sharing one heat computation.

    Exact mode reads the heat diagonal once. Stochastic mode evolves each probe
    once and contracts it against every weight.

    Returns:
        Values and standard errors, one per weight
    """
    G = np.stack([np.asarray(g, dtype=float).ravel() for g in weights])
    if TraceMode(mode) == TraceMode.EXACT:
        if op.n > n_exact:
            raise CapabilityError("the exact heat diagonal", op.n, n_exact)
        diag = heat_diagonal(op, t, n_exact)
        return G @ diag, np.zeros(len(G))
    if probes is None:
        raise ParameterError("stochastic mode needs a probe ensemble")
    if applier is None:
        applier = HeatApplier(op, HeatMethod.CHEBYSHEV)
    samples = np.empty((len(G), probes.n_probes))
    for start in range(0, probes.n_probes, PROBE_BLOCK):
        stop = min(start + PROBE_BLOCK, probes.n_probes)
        z = probes.block(start, stop, op.n)
        samples[:, start:stop] = G @ np.real(z.conj() * applier.apply(t, z))
    std = np.std(samples, axis=1, ddof=1) / np.sqrt(probes.n_probes)
    return samples.mean(axis=1), std


def ball_average_heat_trace(
    op: SparseHermitianOperator,
    geom: LatticeGeometry,
    t: float,
    radii: Optional[Sequence[float]] = None,
    mode: TraceMode = TraceMode.EXACT,
    probes: Optional[ProbeEnsemble] = None,
    n_exact: int = N_EXACT,
) -> EstimatorResult:
    """
    (1/|B(x₀,R)|) Tr(e^{−tP} χ_{B(x₀,R)}) over increasing radii.

    The standard error is the batch-means error of the heat diagonal on the
    largest ball in exact mode, and the probe error of the last approximant in
    stochastic mode.

    Raises:
        GeometryError: If a radius leaves the guard band
    """
    radii = list(radii) if radii is not None else default_radii(geom)
    if not radii or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ParameterError(f"radii must be non-empty and increasing, got {radii}")
    if radii[-1] > geom.guard_radius:
        raise GeometryError(
            f"radius {radii[-1]:g} exceeds the guard band (largest allowed {geom.guard_radius:g})"
        )
    masks = [ball_indicator(geom, R) for R in radii]
    volumes = np.array([ball_volume(geom, R) for R in radii], dtype=float)
    sums, errors = masked_heat_sums(op, t, masks, mode, probes, n_exact=n_exact)
    approximants = [(float(R), float(s / v)) for R, s, v in zip(radii, sums, volumes)]

    if TraceMode(mode) == TraceMode.EXACT:
        diag = heat_diagonal(op, t, n_exact)
        std_error = batch_standard_error(diag[masks[-1]])
    else:
        std_error = float(errors[-1] / volumes[-1])
    return _finish(
        EstimatorMethod.BALL_AVERAGE,
        approximants,
        t,
        std_error,
        ball_volumes=volumes.astype(int).tolist(),
        mode=TraceMode(mode).value,
    )


def default_eps_grid(geom: LatticeGeometry, radii: Optional[Sequence[float]] = None) -> List[float]:
    """ε = 1/(1 + |B(R)|) at the default (or given) radii."""
    radii = radii if radii is not None else default_radii(geom)
    return [1.0 / (1.0 + ball_volume(geom, R)) for R in radii]


def epsilon_formula(
    op: SparseHermitianOperator,
    weights: WeightField,
    t: float,
    eps_grid: Sequence[float],
    mode: TraceMode = TraceMode.EXACT,
    probes: Optional[ProbeEnsemble] = None,
    n_exact: int = N_EXACT,
) -> EstimatorResult:
    """
    ε Tr(e^{−tP} χ_{[ε,∞)}(M_w)) for ε decreasing to 0.

    When the weight field knows its geometry, the result carries the witness
    that every level set equals the ball of matching radius.

    Raises:
        ParameterError: If some ε leaves the mask empty
    """
    eps_grid = sorted((float(e) for e in eps_grid), reverse=True)
    if not eps_grid:
        raise ParameterError("epsilon grid is empty")
    masks = [weights.mask(eps) for eps in eps_grid]
    for eps, mask in zip(eps_grid, masks):
        if not mask.any():
            raise ParameterError(f"epsilon {eps:g} exceeds max(w); the mask is empty")
    sums, errors = masked_heat_sums(op, t, masks, mode, probes, n_exact=n_exact)
    approximants = [(eps, float(eps * s)) for eps, s in zip(eps_grid, sums)]

    extras = {"mask_sizes": [int(m.sum()) for m in masks]}
    geom = weights.geometry
    if geom is not None:
        extras["mask_equals_ball"] = all(
            np.array_equal(mask, ball_indicator(geom, radius_for_epsilon(geom, eps)))
            for eps, mask in zip(eps_grid, masks)
        )
    return _finish(
        EstimatorMethod.EPSILON,
        approximants,
        t,
        float(eps_grid[-1] * errors[-1]),
        **extras,
    )


def richardson_extrapolate(
    h: Sequence[float], values: Sequence[float]
) -> Tuple[float, bool, float]:
    """
    Polynomial in h through every point, evaluated at h = 0.

    Returns:
        The extrapolated value, whether dropping the largest h changes it by
        less than 1%, and that relative change
    """
    h = np.asarray(h, dtype=float)
    y = np.asarray(values, dtype=float)
    order = np.argsort(h)
    h, y = h[order], y[order]
    value = float(np.polyfit(h, y, h.size - 1)[-1]) if h.size > 1 else float(y[0])
    if h.size < 2:
        return value, False, float("inf")
    reduced = float(np.polyfit(h[:-1], y[:-1], h.size - 2)[-1]) if h.size > 2 else float(y[0])
    change = abs(value - reduced) / max(abs(value), 1e-300)
    return value, change < RELATIVE_SPREAD, change


def check_s_grid(s_grid: Sequence[float]) -> List[float]:
    """Exponents sorted decreasing, each in (1, 2]."""
    s_grid = sorted((float(s) for s in s_grid), reverse=True)
    if not s_grid or any(not 1 < s <= 2 for s in s_grid):
        raise ParameterError(f"s values must lie in (1, 2], got {s_grid}")
    return s_grid


@dataclass(frozen=True)
class SFamilyFit:
    """
    Limit of a finite-box s-family.

    ``value`` is the constant term a₀ of the fit, ``amplitude`` the fitted
    truncation amplitude G, ``truncation_bias`` the part G·ε_min^{s−1} the box
    misses at the smallest s, and ``residual`` the relative mismatch |a₀ − G|/|a₀|.
    """

    value: float
    amplitude: float
    truncation_bias: float
    residual: float

    @property
    def converged(self) -> bool:
        return self.residual < RELATIVE_SPREAD


def s_family(s_grid: Sequence[float], traces: Sequence[float]) -> np.ndarray:
    """Approximants (s−1)·Tr(AB^s), one per s."""
    return (np.asarray(s_grid, dtype=float) - 1.0) * np.asarray(traces, dtype=float)


def extrapolate_s_family(
    s_grid: Sequence[float], raw: Sequence[float], floor: float
) -> SFamilyFit:
    """
    Extrapolate (s−1)·Tr(AB^s) to s = 1 on a box where B ≥ ε_min = ``floor``.

    Eigenvalues of B below ε_min are missing from the box. If its counting
    function continues as G/ε there, the box family is
    raw(h) = F(h) − G·ε_min^h with h = s − 1 and F the untruncated family. The
    fit takes F polynomial of degree len(s_grid) − 2 and solves for its
    coefficients and G together, so G comes from the shape of the family and
    not from Tr(A). The value is F(0). A box family vanishes at h = 0, so
    F(0) = G is a check the fit never sees; ``residual`` measures it.

    B with zero eigenvalues (finite rank) has no missing tail: the family is
    Richardson-extrapolated directly and the residual is the change from
    dropping the largest h.

    Raises:
        InsufficientDataError: If a truncated family has fewer than two exponents
    """
    h = np.asarray(s_grid, dtype=float) - 1.0
    y = np.asarray(raw, dtype=float)
    if floor <= 0:
        value, _, change = richardson_extrapolate(h, y)
        return SFamilyFit(value=value, amplitude=0.0, truncation_bias=0.0, residual=change)
    if h.size < 2:
        raise InsufficientDataError("insufficient data: the s-family needs two exponents")
    tail = floor**h
    basis = np.column_stack([h**k for k in range(h.size - 1)] + [-tail])
    coefficients = np.linalg.lstsq(basis, y, rcond=None)[0]
    value, amplitude = float(coefficients[0]), float(coefficients[-1])
    residual = abs(value - amplitude) / max(abs(value), 1e-300)
    return SFamilyFit(
        value=value,
        amplitude=amplitude,
        truncation_bias=float(amplitude * tail[np.argmin(h)]),
        residual=residual,
    )


def s_limit_formula(
    op: SparseHermitianOperator,
    weights: Weights,
    t: float,
    s_grid: Sequence[float] = DEFAULT_S_GRID,
    mode: TraceMode = TraceMode.EXACT,
    probes: Optional[ProbeEnsemble] = None,
    n_exact: int = N_EXACT,
) -> EstimatorResult:
    """
    (s−1) Tr(e^{−tP} M_w^s) for s decreasing to 1, extrapolated in s−1.

    The approximants are the box values themselves. The box holds no weights
    below ε_min = min w, so the extrapolation fits the missing tail along with
    the limit (see :func:`extrapolate_s_family`). ``extras`` carries the
    fitted amplitude, the truncation bias at the smallest s and, for
    comparison, the amplitude ε_min·Tr(e^{−tP}) a counting-function closure
    would assume.
    """
    s_grid = check_s_grid(s_grid)
    w = _weight_values(weights)
    powers = [w**s for s in s_grid] + [np.ones_like(w)]
    sums, errors = masked_heat_sums(op, t, powers, mode, probes, n_exact=n_exact)
    traces, total = sums[:-1], float(sums[-1])

    raw = s_family(s_grid, traces)
    floor = float(w.min())
    fit = extrapolate_s_family(s_grid, raw, floor)
    if not fit.converged:
        logger.warning("s-limit at t=%g did not converge (residual %.3g)", t, fit.residual)
    h = np.array(s_grid) - 1.0
    bias = fit.truncation_bias
    return EstimatorResult(
        method=EstimatorMethod.S_LIMIT,
        value=fit.value,
        approximants=[(float(s), float(a)) for s, a in zip(s_grid, raw)],
        converged=fit.converged,
        std_error=float(h[-1] * errors[-2]),
        t=t,
        extras={
            "extrapolation_residual": fit.residual,
            "fitted_amplitude": fit.amplitude,
            "closure_amplitude": floor * total,
            "truncation_bias": bias,
            "tail_fraction": float(bias / (raw[-1] + bias)) if bias else 0.0,
        },
    )


def bulk_length(
    eigenvalues: np.ndarray,
    weights: np.ndarray,
    kernel_norm: float,
    margin: float = DIXMIER_BULK_MARGIN,
) -> int:
    """
    Number of leading eigenvalues above ``margin`` ‖K‖ min w.

    Below that level the weight has stopped decaying at the edge of the box and
    the eigenvalues no longer follow the infinite-volume sequence. ``eigenvalues``
    must be in Dixmier order. At least sixteen terms are kept when available.
    """
    positive = weights[weights > 0]
    if positive.size == 0 or not kernel_norm > 0:
        return int(eigenvalues.size)
    floor = margin * kernel_norm * float(positive.min())
    count = int(np.count_nonzero(np.abs(eigenvalues) > floor))
    return min(int(eigenvalues.size), max(count, DIXMIER_MIN_TERMS))


def dixmier_from_kernel(
    kernel: np.ndarray,
    weights: Weights,
    t: Optional[float] = None,
    surrogate: Optional[ExtendedLimitSurrogate] = None,
    kernel_norm: Optional[float] = None,
) -> EstimatorResult:
    """
    Surrogate Dixmier trace of K M_w for a dense Hermitian kernel K on sites.

    Only the bulk part of the spectrum (see :func:`bulk_length`) enters the
    log-Cesàro means. ``kernel_norm`` defaults to the largest absolute row sum
    of K, an upper bound for ‖K‖.
    """
    w = _weight_values(weights)
    root = np.sqrt(w)
    symmetric = root[:, None] * kernel * root[None, :]
    eigenvalues = order_eigenvalues(np.linalg.eigvalsh(symmetric))
    if kernel_norm is None:
        kernel_norm = float(np.abs(kernel).sum(axis=1).max(initial=0.0))
    kept = bulk_length(eigenvalues, w, kernel_norm)
    surrogate = surrogate or LogExtrapolationSurrogate(1)
    estimate = dixmier_estimate(eigenvalues[:kept], surrogate)
    means = np.asarray(estimate.means)
    idx = np.unique(np.append(dyadic_indices(means.size), means.size - 1))
    return EstimatorResult(
        method=EstimatorMethod.DIXMIER,
        value=estimate.value,
        approximants=[(float(i), float(means[i])) for i in idx],
        converged=estimate.converged,
        t=t,
        extras={
            "spread": estimate.spread,
            "tolerance": estimate.tolerance,
            "surrogate": estimate.surrogate,
            "n_terms": estimate.n_terms,
            "n_eigenvalues": int(eigenvalues.size),
        },
    )


def dixmier_side(
    op: SparseHermitianOperator,
    weights: Weights,
    t: float,
    surrogate: Optional[ExtendedLimitSurrogate] = None,
    n_exact: int = N_EXACT,
) -> EstimatorResult:
    """
    Surrogate Dixmier trace of e^{−tP} M_w.

    Eigenvalues are taken from M_w^{1/2} e^{−tP} M_w^{1/2}, which shares the
    nonzero spectrum of e^{−tP} M_w and is Hermitian.

    Raises:
        CapabilityError: If the operator has more than ``n_exact`` sites
    """
    if t < 0:
        raise ParameterError(f"heat time must be non-negative, got {t}")
    if op.n > n_exact:
        raise CapabilityError("the Dixmier side", op.n, n_exact)
    values, vectors = op.eigh(n_exact)
    heat = np.exp(-t * values)
    kernel = (vectors * heat) @ vectors.conj().T
    return dixmier_from_kernel(kernel, weights, t, surrogate, float(heat.max()))


def dixmier_side_function(
    op: SparseHermitianOperator,
    weights: Weights,
    coefficients: Sequence[float],
    surrogate: Optional[ExtendedLimitSurrogate] = None,
    bounds: Optional[Tuple[float, float]] = None,
    n_exact: int = N_EXACT,
) -> EstimatorResult:
    """Dixmier side with f(P) in place of e^{−tP}, f given by Chebyshev coefficients."""
    if op.n > n_exact:
        raise CapabilityError("the Dixmier side", op.n, n_exact)
    lo, hi = bounds or spectral_bounds(op)
    values, vectors = op.eigh(n_exact)
    x = np.clip((values - 0.5 * (hi + lo)) / (0.5 * (hi - lo)), -1.0, 1.0)
    f_values = np.polynomial.chebyshev.chebval(x, np.asarray(coefficients, dtype=float))
    kernel = (vectors * f_values) @ vectors.conj().T
    return dixmier_from_kernel(kernel, weights, None, surrogate, float(np.abs(f_values).max()))
