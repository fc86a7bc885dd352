"""Property (D), the Grimaldi ratio and the derived shifted-surface conditions."""

import logging
import math
from typing import Sequence

import numpy as np

from ..configs.defaults import (
    CAUCHY_FRACTION,
    DEFAULT_K,
    DEFAULT_RMAX,
    DERIVATIVE_LIMIT,
    MIN_TAIL_TERMS,
    TAIL_DELTA,
)
from ..errors import GeometryError, ParameterError
from ..models.enums import TailVerdict
from ..models.results import PropertyCReport, PropertyDReport, TailReport
from .profiles import GrowthProfile

logger = logging.getLogger(__name__)

SUP_GRID_STEP = 0.125


def classify_tail(ratios: Sequence[float], ks: Sequence[float]) -> TailReport:
    """
    Decide from finitely many terms whether {a_k} lies in ℓ₂.

    Two tests are run on the last dyadic block k ∈ [K/2, K]: a power-law fit
    a_k ~ k^β, and the Cauchy increment Σ_{block} a_k² relative to the total.
    Summable when β < -1/2 - δ or the increment is below 1e-3 of the total;
    divergent when β >= -1/2 and the increment is large; inconclusive otherwise.

    Args:
        ratios: The terms a_k (non-negative)
        ks: Their indices k

    Returns:
        Partial sum of squares, verdict, fitted exponent and block increment
    """
    a = np.asarray(ratios, dtype=float)
    k = np.asarray(ks, dtype=float)
    terms = a * a
    total = float(np.sum(terms))
    if a.size < MIN_TAIL_TERMS:
        return TailReport(partial_sum=total, verdict=TailVerdict.INCONCLUSIVE)
    if total == 0:
        return TailReport(partial_sum=0.0, verdict=TailVerdict.SUMMABLE, block_increment=0.0)

    block = k >= k.max() / 2
    increment = float(np.sum(terms[block])) / total
    fit = block & (a > 0)
    exponent = None
    if np.count_nonzero(fit) >= 2:
        exponent = float(np.polyfit(np.log(k[fit]), np.log(a[fit]), 1)[0])

    fit_summable = exponent is not None and exponent < -0.5 - TAIL_DELTA
    cauchy_summable = increment < CAUCHY_FRACTION
    if fit_summable or cauchy_summable:
        verdict = TailVerdict.SUMMABLE
    elif exponent is None or exponent >= -0.5:
        verdict = TailVerdict.DIVERGENT
    else:
        verdict = TailVerdict.INCONCLUSIVE
    return TailReport(
        partial_sum=total, verdict=verdict, exponent=exponent, block_increment=increment
    )


def surface_ratio_sequence(profile: GrowthProfile, K: int) -> np.ndarray:
    """S(k)/V(k) for k = 1..K."""
    if K < 1:
        raise ParameterError(f"K must be at least 1, got {K}")
    k = np.arange(1, K + 1, dtype=float)
    log_v = profile.log_volume(k)
    if np.any(np.isneginf(log_v)):
        first = int(k[np.argmax(np.isneginf(log_v))])
        raise GeometryError(f"V({first}) = 0, the surface ratio is undefined")
    return np.exp(profile.log_surface(k) - log_v)


def _require_monotone(profile: GrowthProfile, radii: np.ndarray) -> None:
    log_v = profile.log_volume(radii)
    if np.any(np.diff(log_v) < -1e-12):
        raise GeometryError(f"{profile.describe()} has a decreasing volume")


def check_property_d(
    profile: GrowthProfile, K: int = DEFAULT_K, Rmax: float = DEFAULT_RMAX
) -> PropertyDReport:
    """
    Evaluate both Property (D) conditions.

    The ℓ₂ condition on S(k)/V(k) goes through :func:`classify_tail`; the
    derivative condition asks S'(R)/S(R) at R = Rmax/4, Rmax/2, Rmax to be
    non-increasing and finally below 0.05 in absolute value.
    """
    if K < 16:
        raise ParameterError(f"K must be at least 16, got {K}")
    if Rmax < K:
        raise ParameterError(f"Rmax must be at least K, got Rmax={Rmax}, K={K}")
    _require_monotone(profile, np.arange(1, max(K, int(math.ceil(Rmax))) + 1, dtype=float))

    ratios = surface_ratio_sequence(profile, K)
    tail = classify_tail(ratios, np.arange(1, K + 1))

    radii = np.array([Rmax / 4, Rmax / 2, Rmax])
    derivative = np.asarray(profile.surface_log_derivative(radii), dtype=float)
    trend = float(np.polyfit(np.log(radii), derivative, 1)[0])
    non_increasing = bool(np.all(np.diff(derivative) <= 1e-15))
    derivative_ok = non_increasing and abs(float(derivative[-1])) < DERIVATIVE_LIMIT

    report = PropertyDReport(
        ell2_partial_sum=tail.partial_sum,
        ell2_tail_verdict=tail.verdict,
        derivative_ratio_limit=float(derivative[-1]),
        derivative_ratio_trend=trend,
        derivative_ratios=[(float(r), float(v)) for r, v in zip(radii, derivative)],
        derivative_ok=derivative_ok,
        K=K,
        Rmax=Rmax,
        exponent=tail.exponent,
    )
    logger.info("Property (D) for %s: passes=%s", profile.describe(), report.passes)
    return report


def check_grimaldi_ratio(profile: GrowthProfile, r: float, Rmax: float) -> float:
    """min over R ∈ [Rmax/2, Rmax] (step 0.5) of V(R−r)/V(R+r)."""
    if r < 0 or Rmax <= 2 * r:
        raise ParameterError(f"Grimaldi ratio needs Rmax > 2r >= 0, got r={r}, Rmax={Rmax}")
    R = np.arange(Rmax / 2, Rmax + 1e-9, 0.5)
    upper = profile.log_volume(R + r)
    if np.any(np.isneginf(upper)):
        raise GeometryError("V(R+r) = 0 on the Grimaldi grid")
    return float(np.min(np.exp(profile.log_volume(R - r) - upper)))


def _sup_grid(lo: float, hi: float, step: float) -> np.ndarray:
    count = int(round((hi - lo) / step))
    return np.linspace(lo, hi, count + 1)


def shifted_surface_condition(profile: GrowthProfile, h: float, K: int = DEFAULT_K) -> TailReport:
    """ℓ₂ verdict for sup_{s∈[0,h]} S(k+s)/V(k), k = 1..K."""
    if not h > 0:
        raise ParameterError(f"shift h must be positive, got {h}")
    s = _sup_grid(0.0, h, min(h / 8, SUP_GRID_STEP))
    k = np.arange(1, K + 1, dtype=float)
    log_v = profile.log_volume(k)
    if np.any(np.isneginf(log_v)):
        raise GeometryError("V(k) = 0 in the shifted-surface condition")
    log_s = profile.log_surface(k[:, None] + s[None, :])
    ratios = np.exp(np.max(log_s, axis=1) - log_v)
    return classify_tail(ratios, k)


def condition1_partial_sum(profile: GrowthProfile, r0: float, K: int = DEFAULT_K) -> TailReport:
    """
    Σ_{k=0}^{K} sup_{s∈[-1,2]} S((k+s)r₀)² / (1+V((k−1)r₀))².

    The k = 0 term evaluates V at a negative radius, where it is clamped to V(0).
    """
    if not 0 < r0 <= 1:
        raise ParameterError(f"r0 must lie in (0, 1], got {r0}")
    s = _sup_grid(-1.0, 2.0, SUP_GRID_STEP)
    k = np.arange(0, K + 1, dtype=float)
    log_s = np.max(profile.log_surface((k[:, None] + s[None, :]) * r0), axis=1)
    log_den = profile.log_one_plus_volume((k - 1) * r0)
    ratios = np.exp(log_s - log_den)
    report = classify_tail(ratios[1:], k[1:])
    report.partial_sum = float(np.sum(ratios * ratios))
    return report


def weight_at(profile: GrowthProfile, distance: float) -> float:
    """w = 1/(1+V(distance))."""
    if distance < 0:
        raise ParameterError(f"distance must be non-negative, got {distance}")
    return float(np.exp(-profile.log_one_plus_volume(distance)))


def property_c_ratio(
    profile: GrowthProfile, r_step: float = 1.0, K: int = DEFAULT_K
) -> PropertyCReport:
    """Discrete volume ratios V((k+1)r)/V(kr), k = 1..K, and whether they tend to 1."""
    if not r_step > 0:
        raise ParameterError(f"r_step must be positive, got {r_step}")
    k = np.arange(1, K + 1, dtype=float)
    ratios = np.exp(profile.log_volume((k + 1) * r_step) - profile.log_volume(k * r_step))
    final = float(ratios[-1])
    return PropertyCReport(
        ratios=ratios.tolist(), final_ratio=final, tends_to_one=abs(final - 1) < 1e-2
    )
