"""Log-Cesàro means and surrogate Dixmier traces."""

import logging
import math
from typing import Optional, Sequence

import numpy as np

from ..configs.defaults import DIXMIER_MIN_TERMS, DIXMIER_WINDOW
from ..errors import InsufficientDataError
from ..models.sequences import DixmierEstimate
from ..strategies.base import ExtendedLimitSurrogate
from ..strategies.surrogates import TailMeanSurrogate, dyadic_indices

logger = logging.getLogger(__name__)


def order_eigenvalues(values: Sequence[float]) -> np.ndarray:
    """
    Eigenvalues ordered for Dixmier sums.

    Descending absolute value; ties go to the larger signed value, then to the
    earlier input position.
    """
    arr = np.asarray(values, dtype=float).ravel()
    order = np.lexsort((np.arange(arr.size), -arr, -np.abs(arr)))
    return arr[order]


def log_cesaro_means(seq: Sequence[float]) -> np.ndarray:
    """M_N = (1/log(2+N)) Σ_{k<=N} λ(k) for every N."""
    arr = np.asarray(seq, dtype=float).ravel()
    return np.cumsum(arr) / np.log(2.0 + np.arange(arr.size))


def dixmier_estimate(
    seq: Sequence[float],
    surrogate: Optional[ExtendedLimitSurrogate] = None,
    window: float = DIXMIER_WINDOW,
) -> DixmierEstimate:
    """
    Apply an extended-limit surrogate to the log-Cesàro means of ``seq``.

    The sequence is used in the order given; callers pass eigenvalues through
    :func:`order_eigenvalues` first. Convergence is judged on the last
    ``window`` fraction of the means together with the dyadic indices inside
    that window.

    Args:
        seq: Eigenvalue sequence λ(0), λ(1), ...
        surrogate: The ω stand-in (tail mean over the last 20% by default)
        window: Fraction of indices forming the diagnostic window

    Returns:
        Value, means, convergence flag and the window spread

    Raises:
        InsufficientDataError: If fewer than 16 terms are given
    """
    arr = np.asarray(seq, dtype=float).ravel()
    if arr.size < DIXMIER_MIN_TERMS:
        raise InsufficientDataError(
            f"insufficient data: {arr.size} terms, at least {DIXMIER_MIN_TERMS} needed"
        )
    surrogate = surrogate or TailMeanSurrogate(0.2)
    means = log_cesaro_means(arr)
    value = surrogate.apply(means)

    start = arr.size - max(2, int(math.ceil(window * arr.size)))
    idx = np.union1d(np.arange(start, arr.size), dyadic_indices(arr.size, start))
    spread = float(np.ptp(means[idx]))
    tolerance = surrogate.tolerance(value)
    converged = spread <= tolerance
    if not converged:
        logger.warning(
            "Dixmier means not settled: spread %.3g above tolerance %.3g (%s)",
            spread,
            tolerance,
            surrogate.describe(),
        )
    return DixmierEstimate(
        value=value,
        means=means.tolist(),
        converged=converged,
        spread=spread,
        tolerance=tolerance,
        surrogate=surrogate.describe(),
    )
