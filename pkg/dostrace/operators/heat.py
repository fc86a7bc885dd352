"""Heat-semigroup application: dense eigenbasis or certified Chebyshev expansion."""

import logging
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.special import ive

from ..configs.defaults import CHEB_DEGREE_CAP, CHEB_SAFETY, N_EXACT
from ..errors import ParameterError
from ..models.enums import HeatMethod
from .hermitian import SparseHermitianOperator, spectral_bounds

logger = logging.getLogger(__name__)


def chebyshev_series_apply(
    op: SparseHermitianOperator,
    coefficients: Sequence[float],
    v: np.ndarray,
    bounds: Tuple[float, float],
) -> np.ndarray:
    """
    Σ_k c_k T_k(X) v with X = (P − centre)/half_width mapped from ``bounds`` to [−1, 1].

    ``v`` may be a vector or a block of column vectors.
    """
    lo, hi = bounds
    centre, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
    if half <= 0:
        raise ParameterError(f"degenerate spectral interval [{lo}, {hi}]")
    c = np.asarray(coefficients)

    def rescaled(x):
        return (op.matrix @ x - centre * x) / half

    t_prev = np.array(v, dtype=np.result_type(v, op.matrix.dtype, c.dtype), copy=True)
    out = c[0] * t_prev
    if c.size == 1:
        return out
    t_curr = rescaled(t_prev)
    out = out + c[1] * t_curr
    for ck in c[2:]:
        t_prev, t_curr = t_curr, 2.0 * rescaled(t_curr) - t_prev
        out = out + ck * t_curr
    return out


def chebyshev_function_apply(
    op: SparseHermitianOperator,
    coefficients: Sequence[float],
    v: np.ndarray,
    bounds: Optional[Tuple[float, float]] = None,
) -> np.ndarray:
    """f(P)v for f given by Chebyshev coefficients on the operator's spectral bounds."""
    return chebyshev_series_apply(op, coefficients, v, bounds or spectral_bounds(op))


def heat_chebyshev_coefficients(
    t: float, bounds: Tuple[float, float], tol: float, cap: int = CHEB_DEGREE_CAP
) -> Tuple[np.ndarray, float]:
    """
    Chebyshev coefficients of x ↦ e^{−tx} on ``bounds`` with a certified tail.

    e^{−tx} = e^{−t·lo} Σ_k (2 − δ_{k0}) (−1)^k ive(k, t·h) T_k(X), h the half
    width. The smallest M whose coefficient tail Σ_{k>M} |c_k| is below ``tol``
    is doubled (safety margin) and capped.

    Returns:
        The coefficients up to the chosen degree and the certified tail bound
    """
    lo, hi = bounds
    z = t * 0.5 * (hi - lo)
    k = np.arange(cap + 1)
    c = np.exp(-t * lo) * np.where(k == 0, 1.0, 2.0) * (-1.0) ** k * ive(k, z)
    tails = np.cumsum(np.abs(c)[::-1])[::-1]
    # tails[m + 1] = Σ_{k>m} |c_k|
    below = np.flatnonzero(np.append(tails[1:], 0.0) <= tol)
    minimal = int(below[0]) if below.size else cap
    degree = min(CHEB_SAFETY * max(minimal, 1), cap)
    tail = float(tails[degree + 1]) if degree < cap else float(np.abs(c[-1]))
    if not below.size:
        logger.warning("Chebyshev degree cap %d reached at t=%g; tail bound %.3g", cap, t, tail)
    return c[: degree + 1], tail


class HeatApplier:
    """
    Applies e^{−tP} to vectors.

    The exact path diagonalises once and reuses the eigenbasis for every t;
    the Chebyshev path caches coefficients per t.
    """

    def __init__(
        self,
        op: SparseHermitianOperator,
        method: Optional[HeatMethod] = None,
        tol: float = 1e-10,
        n_exact: int = N_EXACT,
    ):
        if not tol > 0:
            raise ParameterError(f"tolerance must be positive, got {tol}")
        self.op = op
        self.tol = tol
        if method is None:
            method = HeatMethod.EXACT_EIG if op.n <= n_exact else HeatMethod.CHEBYSHEV
        self.method = HeatMethod(method)
        self.n_exact = n_exact
        self._coefficients: Dict[Tuple[float, float], Tuple[np.ndarray, float]] = {}
        logger.info("Heat applier for %r uses the %s path", op, self.method.value)

    def coefficients(self, t: float, tol: Optional[float] = None) -> Tuple[np.ndarray, float]:
        key = (float(t), float(tol or self.tol))
        if key not in self._coefficients:
            bounds = spectral_bounds(self.op)
            coeffs, tail = heat_chebyshev_coefficients(t, bounds, key[1])
            logger.debug(
                "Chebyshev degree %d on [%g, %g] at t=%g (tail %.2e)",
                coeffs.size - 1,
                bounds[0],
                bounds[1],
                t,
                tail,
            )
            self._coefficients[key] = (coeffs, tail)
        return self._coefficients[key]

    def degree(self, t: float) -> int:
        return self.coefficients(t)[0].size - 1

    def apply(self, t: float, v: np.ndarray, tol: Optional[float] = None) -> np.ndarray:
        """
        e^{−tP} v.

        Args:
            t: Time, t >= 0
            v: Vector or block of column vectors
            tol: Overrides the applier tolerance (Chebyshev path)

        Returns:
            The heat-evolved vector(s)
        """
        if t < 0:
            raise ParameterError(f"heat time must be non-negative, got {t}")
        if tol is not None and not tol > 0:
            raise ParameterError(f"tolerance must be positive, got {tol}")
        v = np.asarray(v)
        if t == 0:
            return v.copy()
        if self.method == HeatMethod.EXACT_EIG:
            values, vectors = self.op.eigh(self.n_exact)
            factors = np.exp(-t * values)
            projected = vectors.conj().T @ v
            scaled = factors[:, None] * projected if projected.ndim == 2 else factors * projected
            out = vectors @ scaled
            return out.real if not np.iscomplexobj(v) and self.op.is_real else out
        coeffs, _ = self.coefficients(t, tol)
        return chebyshev_series_apply(self.op, coeffs, v, spectral_bounds(self.op))


def heat_apply(
    applier: HeatApplier, t: float, v: np.ndarray, tol: Optional[float] = None
) -> np.ndarray:
    """Functional form of :meth:`HeatApplier.apply`."""
    return applier.apply(t, v, tol)
