"""DOS functionals ∫f dν through Chebyshev filtering, and a KPM histogram of ν."""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from numpy.polynomial import Chebyshev
from numpy.polynomial.chebyshev import chebval, chebvander

from ..configs.defaults import N_EXACT
from ..errors import ParameterError
from ..lattice.balls import ball_indicator, ball_volume
from ..models.geometry import LatticeGeometry
from ..models.results import DOSMeasure
from ..operators.heat import chebyshev_series_apply, heat_chebyshev_coefficients
from ..operators.hermitian import SparseHermitianOperator, spectral_bounds
from ..operators.traces import PROBE_BLOCK, ProbeEnsemble

logger = logging.getLogger(__name__)

MIN_MOMENTS = 64


@dataclass(frozen=True, eq=False)
class ChebyshevFunction:
    """f(λ) = Σ_k c_k T_k(X), X the affine map of ``bounds`` onto [−1, 1]."""

    coefficients: np.ndarray
    bounds: Tuple[float, float]
    support: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        coefficients = np.asarray(self.coefficients, dtype=float).ravel()
        if coefficients.size == 0:
            raise ParameterError("a Chebyshev function needs at least one coefficient")
        lo, hi = self.bounds
        if not hi > lo:
            raise ParameterError(f"degenerate interval [{lo}, {hi}]")
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "bounds", (float(lo), float(hi)))

    @classmethod
    def interpolate(
        cls,
        fn: Callable[[np.ndarray], np.ndarray],
        bounds: Tuple[float, float],
        degree: int,
        support: Optional[Tuple[float, float]] = None,
    ) -> "ChebyshevFunction":
        """Chebyshev interpolant of ``fn`` on ``bounds``."""
        series = Chebyshev.interpolate(fn, degree, domain=list(bounds))
        return cls(series.coef, bounds, support)

    @classmethod
    def heat(cls, t: float, bounds: Tuple[float, float], tol: float = 1e-12) -> "ChebyshevFunction":
        """λ ↦ e^{−tλ} with a certified coefficient tail below ``tol``."""
        coefficients, _ = heat_chebyshev_coefficients(t, bounds, tol)
        return cls(coefficients, bounds)

    @property
    def degree(self) -> int:
        return self.coefficients.size - 1

    def rescale(self, x) -> np.ndarray:
        lo, hi = self.bounds
        return (np.asarray(x, dtype=float) - 0.5 * (hi + lo)) / (0.5 * (hi - lo))

    def __call__(self, x):
        return chebval(np.clip(self.rescale(x), -1.0, 1.0), self.coefficients)


def dos_functional(
    op: SparseHermitianOperator,
    geom: LatticeGeometry,
    f: ChebyshevFunction,
    radius: Optional[float] = None,
    probes: Optional[ProbeEnsemble] = None,
    n_exact: int = N_EXACT,
) -> float:
    """
    Ball-averaged Tr(f(P) χ_B)/|B| for the ball of the given radius.

    Instances up to ``n_exact`` sites (and no probes) use the eigenbasis;
    otherwise f(P) is applied to probe blocks by the Chebyshev recurrence.

    Args:
        op: The operator
        geom: Its lattice
        f: The test function
        radius: Ball radius (the guard radius by default)
        probes: Probe ensemble for the stochastic path
        n_exact: Largest instance diagonalised

    Returns:
        The normalised trace, ≈ ∫ f dν for large balls
    """
    lo, hi = spectral_bounds(op)
    if f.support is not None and (f.support[1] < lo or f.support[0] > hi):
        logger.warning(
            "Support [%g, %g] lies outside the spectral bounds [%g, %g]; expect ≈ 0",
            f.support[0],
            f.support[1],
            lo,
            hi,
        )
    radius = geom.guard_radius if radius is None else radius
    mask = ball_indicator(geom, radius)
    volume = ball_volume(geom, radius)

    if probes is None and op.n <= n_exact:
        values, vectors = op.eigh(n_exact)
        diag = (np.abs(vectors[mask]) ** 2) @ f(values)
        return float(np.sum(diag) / volume)
    if probes is None:
        raise ParameterError(f"N={op.n} exceeds the exact limit; pass a probe ensemble")

    total = 0.0
    weight = mask.astype(float)
    for start in range(0, probes.n_probes, PROBE_BLOCK):
        stop = min(start + PROBE_BLOCK, probes.n_probes)
        z = probes.block(start, stop, op.n)
        filtered = chebyshev_series_apply(op, f.coefficients, z, f.bounds)
        total += float(np.sum(weight @ np.real(z.conj() * filtered)))
    return total / probes.n_probes / volume


def jackson_kernel(n_moments: int) -> np.ndarray:
    """Jackson damping factors g_0..g_{M−1}."""
    m = np.arange(n_moments)
    a = np.pi / (n_moments + 1)
    return ((n_moments - m + 1) * np.cos(a * m) + np.sin(a * m) / np.tan(a)) / (n_moments + 1)


def _bin_integrals(x_edges: np.ndarray, n_moments: int) -> np.ndarray:
    """
    ∫ T_k(x) / (π√(1−x²)) dx over each bin, as an (M, bins) matrix.

    With x = cos θ the integrand is cos(kθ)/π dθ.
    """
    theta = np.arccos(np.clip(x_edges, -1.0, 1.0))
    k = np.arange(1, n_moments)[:, None]
    rows = np.empty((n_moments, x_edges.size - 1))
    rows[0] = (theta[:-1] - theta[1:]) / np.pi
    sines = np.sin(k * theta[None, :]) / k
    rows[1:] = (sines[:, :-1] - sines[:, 1:]) / np.pi
    return rows


def _probe_moments(
    op: SparseHermitianOperator, bounds: Tuple[float, float], n_moments: int, probes: ProbeEnsemble
) -> np.ndarray:
    """Per-probe moments z·T_k(X)z / N, shape (n_probes, M)."""
    lo, hi = bounds
    centre, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
    out = np.empty((probes.n_probes, n_moments))
    for start in range(0, probes.n_probes, PROBE_BLOCK):
        stop = min(start + PROBE_BLOCK, probes.n_probes)
        z = probes.block(start, stop, op.n)
        t_prev = z.astype(np.result_type(z, op.matrix.dtype))
        t_curr = (op.matrix @ t_prev - centre * t_prev) / half
        out[start:stop, 0] = np.real(np.sum(z.conj() * t_prev, axis=0))
        if n_moments > 1:
            out[start:stop, 1] = np.real(np.sum(z.conj() * t_curr, axis=0))
        for k in range(2, n_moments):
            t_prev, t_curr = t_curr, 2.0 * (op.matrix @ t_curr - centre * t_curr) / half - t_prev
            out[start:stop, k] = np.real(np.sum(z.conj() * t_curr, axis=0))
    return out / op.n


def kpm_dos_histogram(
    op: SparseHermitianOperator,
    geom: LatticeGeometry,
    n_moments: int = 256,
    probes: Optional[ProbeEnsemble] = None,
    bins: int = 100,
    n_exact: int = N_EXACT,
) -> DOSMeasure:
    """
    Jackson-damped Chebyshev moment histogram of the per-site spectral measure.

    Bin masses are integrated exactly in θ = arccos x. Negative masses from
    the truncated series are clipped to zero. Without probes the moments are
    computed from exact eigenvalues, which needs N <= ``n_exact``.

    Returns:
        Histogram over the spectral bounds, with per-bin standard errors when
        probes are used
    """
    if n_moments < MIN_MOMENTS:
        raise ParameterError(f"KPM needs at least {MIN_MOMENTS} moments, got {n_moments}")
    if bins < 1:
        raise ParameterError(f"bins must be positive, got {bins}")
    if geom.n_sites != op.n:
        raise ParameterError(f"geometry has {geom.n_sites} sites, operator has {op.n}")
    lo, hi = spectral_bounds(op)
    edges = np.linspace(lo, hi, bins + 1)
    x_edges = (edges - 0.5 * (hi + lo)) / (0.5 * (hi - lo))
    kernel = jackson_kernel(n_moments)
    integrals = _bin_integrals(x_edges, n_moments)
    scale = np.where(np.arange(n_moments) == 0, 1.0, 2.0) * kernel

    std_error = None
    if probes is None:
        values = op.eigenvalues(n_exact)
        x = np.clip((values - 0.5 * (hi + lo)) / (0.5 * (hi - lo)), -1.0, 1.0)
        moments = chebvander(x, n_moments - 1).mean(axis=0)
        masses = (moments * scale) @ integrals
    else:
        per_probe = (_probe_moments(op, (lo, hi), n_moments, probes) * scale) @ integrals
        masses = per_probe.mean(axis=0)
        std_error = per_probe.std(axis=0, ddof=1) / np.sqrt(probes.n_probes)
    clipped = int(np.count_nonzero(masses < 0))
    masses = np.clip(masses, 0.0, None)
    return DOSMeasure(
        bin_edges=edges,
        masses=masses,
        mass_std_error=std_error,
        metadata={
            "kernel": "jackson",
            "n_moments": n_moments,
            "n_probes": probes.n_probes if probes else 0,
            "normalisation": f"per site over {geom.describe()}",
            "bounds": [lo, hi],
            "clipped_bins": clipped,
        },
    )
