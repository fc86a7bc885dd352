"""Weighted supertraces of graded pairs and the zero-mode index."""

import logging
from typing import Any, List, Optional, Sequence, Union

import numpy as np

from ..configs.defaults import LAST_APPROXIMANTS, ZERO_MODE_REL
from ..dos.estimators import default_radii, dixmier_from_kernel
from ..errors import NotGradedError, ParameterError
from ..lattice.balls import ball_indicator, ball_volume, weight_field
from ..models.enums import SupertraceMode
from ..models.geometry import LatticeGeometry, WeightField
from ..models.results import SupertraceResult, ZeroModeIndex
from ..operators.dirac import GradedDiracPair
from ..strategies.base import ExtendedLimitSurrogate

logger = logging.getLogger(__name__)

MIN_SCAN_TIMES = 3
AMBIGUITY_FACTOR = 10.0

Times = Union[float, Sequence[float]]


def _require_pair(pair: Any) -> GradedDiracPair:
    if not isinstance(pair, GradedDiracPair):
        raise NotGradedError(
            f"expected a graded Dirac pair, got {type(pair).__name__}; "
            "supertraces need D₊ and its adjoint"
        )
    return pair


def _times(t: Times) -> List[float]:
    times = [float(t)] if np.isscalar(t) else [float(x) for x in t]
    if not times or any(x < 0 for x in times):
        raise ParameterError(f"heat times must be non-negative, got {times}")
    return times


def _site_eigenvectors(pair: GradedDiracPair, which: str):
    """Eigenvalues of a square and its eigenvectors pushed into site space."""
    values, vectors = pair.square_eigh(which)
    if which == "minus" and pair.embedding is not None:
        vectors = pair.embedding @ vectors
    return values, vectors


def supertrace_diagonal(pair: GradedDiracPair, t: float) -> np.ndarray:
    """Site diagonal of e^{−tD₋D₊} − J e^{−tD₊D₋} J*."""
    pair = _require_pair(pair)
    out = np.zeros(pair.geometry.n_sites)
    for which, sign in (("plus", 1.0), ("minus", -1.0)):
        values, vectors = _site_eigenvectors(pair, which)
        out += sign * ((np.abs(vectors) ** 2) @ np.exp(-t * values))
    return out


def _site_kernel(pair: GradedDiracPair, which: str, t: float) -> np.ndarray:
    values, vectors = _site_eigenvectors(pair, which)
    return (vectors * np.exp(-t * values)) @ vectors.conj().T


def supertrace_weighted(
    pair: GradedDiracPair,
    t: Times,
    geom: Optional[LatticeGeometry] = None,
    mode: SupertraceMode = SupertraceMode.BALL_AVERAGE,
    radii: Optional[Sequence[float]] = None,
    weights: Optional[WeightField] = None,
    surrogate: Optional[ExtendedLimitSurrogate] = None,
) -> SupertraceResult:
    """
    Weighted supertrace Tr(e^{−tD₋D₊}M_g) − Tr(e^{−tD₊D₋}M_g) at each t.

    Ball-average mode averages the supertrace diagonal over balls and keeps the
    mean of the last three radii, a value per unit volume. Dixmier mode applies
    the surrogate Dixmier trace to each square separately and subtracts.

    Args:
        pair: The graded pair
        t: One heat time or several
        geom: Site geometry (the pair's own by default)
        mode: Weighting
        radii: Ball radii for ball-average mode
        weights: Weight field for Dixmier mode
        surrogate: Extended-limit surrogate for Dixmier mode

    Returns:
        Values per t with the approximants in ``extras``
    """
    pair = _require_pair(pair)
    geom = geom or pair.geometry
    if geom.n_sites != pair.geometry.n_sites:
        raise ParameterError(
            f"geometry has {geom.n_sites} sites but the pair acts on {pair.geometry.n_sites}"
        )
    times = _times(t)
    mode = SupertraceMode(mode)
    values, approximants = [], []
    if mode == SupertraceMode.BALL_AVERAGE:
        radii = list(radii) if radii is not None else default_radii(geom)
        masks = [ball_indicator(geom, R) for R in radii]
        volumes = [ball_volume(geom, R) for R in radii]
        for time in times:
            diagonal = supertrace_diagonal(pair, time)
            row = [
                (float(R), float(diagonal[m].sum() / v))
                for R, m, v in zip(radii, masks, volumes)
            ]
            approximants.append(row)
            values.append(float(np.mean([v for _, v in row[-LAST_APPROXIMANTS:]])))
    else:
        weights = weights if weights is not None else weight_field(geom)
        for time in times:
            plus = dixmier_from_kernel(_site_kernel(pair, "plus", time), weights, time, surrogate)
            minus = dixmier_from_kernel(_site_kernel(pair, "minus", time), weights, time, surrogate)
            pairs = zip(plus.approximants, minus.approximants)
            approximants.append([(p, a - b) for (p, a), (_, b) in pairs])
            values.append(plus.value - minus.value)

    index = zero_mode_index(pair)
    return SupertraceResult(
        mode=mode,
        t_values=times,
        values=values,
        extras={
            "approximants": approximants,
            "index": index.index,
            "index_density": index.index / geom.n_sites,
            "degenerate_cut": pair.degenerate_cut,
        },
    )


def zero_mode_index(pair: GradedDiracPair, rel: float = ZERO_MODE_REL) -> ZeroModeIndex:
    """
    dim ker D₊ − dim ker D₋ from the singular values of D₊.

    Singular values below ``rel`` times the largest count as zero. A value
    within a factor of ten of that threshold marks the count as ambiguous, and
    so does a pair whose kernel cut has no spectral gap.
    """
    pair = _require_pair(pair)
    singular = pair.singular_values()
    largest = float(singular.max(initial=0.0))
    threshold = rel * largest if largest > 0 else rel
    rank = int(np.count_nonzero(singular > threshold))
    near = (singular > threshold / AMBIGUITY_FACTOR) & (singular < threshold * AMBIGUITY_FACTOR)
    ambiguous = bool(np.any(near)) or pair.degenerate_cut
    if np.any(near):
        logger.warning(
            "Zero-mode count is ambiguous: %d singular values within %gx of the threshold %.3g",
            int(np.count_nonzero(near)),
            AMBIGUITY_FACTOR,
            threshold,
        )
    kernel_plus = pair.dim_plus - rank
    kernel_minus = pair.dim_minus - rank
    return ZeroModeIndex(
        index=kernel_plus - kernel_minus,
        kernel_plus=kernel_plus,
        kernel_minus=kernel_minus,
        threshold=threshold,
        ambiguous=ambiguous,
        cut_gap=pair.cut_gap,
    )


def raw_supertrace(pair: GradedDiracPair, t: float) -> float:
    """Unweighted Tr(e^{−tD₋D₊}) − Tr(e^{−tD₊D₋}); the index for every t."""
    pair = _require_pair(pair)
    if t < 0:
        raise ParameterError(f"heat time must be non-negative, got {t}")
    plus = pair.square_eigh("plus")[0]
    minus = pair.square_eigh("minus")[0]
    return float(np.sum(np.exp(-t * plus)) - np.sum(np.exp(-t * minus)))


def t_independence_scan(
    pair: GradedDiracPair,
    geom: Optional[LatticeGeometry] = None,
    t_list: Sequence[float] = (0.5, 1.0, 2.0),
    mode: SupertraceMode = SupertraceMode.BALL_AVERAGE,
    **options: Any,
) -> float:
    """
    Largest relative deviation of the weighted supertrace over ``t_list``.

    Families that vanish identically report their absolute spread.

    Raises:
        NotGradedError: If ``pair`` is not a graded pair
    """
    pair = _require_pair(pair)
    if len(t_list) < MIN_SCAN_TIMES:
        raise ParameterError(f"a t-scan needs at least {MIN_SCAN_TIMES} times, got {len(t_list)}")
    result = supertrace_weighted(pair, list(t_list), geom, mode, **options)
    return result.max_relative_deviation
