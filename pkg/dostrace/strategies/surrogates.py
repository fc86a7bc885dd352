"""Extended-limit surrogates."""

import math

import numpy as np

from ..errors import InsufficientDataError, ParameterError
from ..models.enums import SurrogateKind
from .base import ExtendedLimitSurrogate

MAX_FIT_POINTS = 4096


def dyadic_indices(n: int, start: int = 0) -> np.ndarray:
    """Indices N = 2^j - 1 with start <= N < n."""
    if n <= 0:
        return np.zeros(0, dtype=np.int64)
    top = int(math.floor(math.log2(n)))
    idx = (1 << np.arange(top + 1, dtype=np.int64)) - 1
    return idx[(idx >= start) & (idx < n)]


class LastValueSurrogate(ExtendedLimitSurrogate):
    """ω(M) := M_{N-1}."""

    kind = SurrogateKind.LAST_VALUE

    def apply(self, means: np.ndarray) -> float:
        return float(means[-1])

    def describe(self) -> str:
        return self.kind.value


class TailMeanSurrogate(ExtendedLimitSurrogate):
    """Average of the last ``fraction`` of the means."""

    kind = SurrogateKind.TAIL_MEAN

    def __init__(self, fraction: float = 0.2):
        if not 0 < fraction <= 1:
            raise ParameterError(f"tail fraction must lie in (0, 1], got {fraction}")
        self.fraction = fraction

    def apply(self, means: np.ndarray) -> float:
        count = max(1, int(math.ceil(self.fraction * len(means))))
        return float(np.mean(means[-count:]))

    def describe(self) -> str:
        return f"{self.kind.value}:{self.fraction:g}"


class DyadicAgreementSurrogate(ExtendedLimitSurrogate):
    """Mean over the last three dyadic indices, judged with a fixed agreement tolerance ``tol``."""

    kind = SurrogateKind.DYADIC_AGREEMENT

    def __init__(self, tol: float = 1e-2):
        if not tol > 0:
            raise ParameterError(f"dyadic tolerance must be positive, got {tol}")
        self.tol = tol

    def apply(self, means: np.ndarray) -> float:
        idx = dyadic_indices(len(means))
        if idx.size == 0:
            raise InsufficientDataError("insufficient data: no dyadic index in the sequence")
        return float(np.mean(means[idx[-3:]]))

    def tolerance(self, value: float) -> float:
        return self.tol

    def describe(self) -> str:
        return f"{self.kind.value}:{self.tol:g}"


class LogExtrapolationSurrogate(ExtendedLimitSurrogate):
    """
    Fit M_N ≈ a + Σ_j b_j / log(2+N)^j over the second half of the means and return a.

    Log-Cesàro means of a weak trace-class sequence approach their limit with a
    1/log N correction, so the constant term of this fit is the limit.
    """

    kind = SurrogateKind.LOG_EXTRAPOLATION

    def __init__(self, order: int = 1):
        if order not in (1, 2):
            raise ParameterError(f"log-extrapolation order must be 1 or 2, got {order}")
        self.order = order

    def apply(self, means: np.ndarray) -> float:
        n = len(means)
        start = n // 2
        if n - start <= self.order + 1:
            raise InsufficientDataError("insufficient data for log extrapolation")
        if n - start > MAX_FIT_POINTS:
            idx = np.unique(np.geomspace(start + 1, n, MAX_FIT_POINTS).astype(np.int64) - 1)
        else:
            idx = np.arange(start, n)
        x = 1.0 / np.log(2.0 + idx)
        design = np.vander(x, self.order + 1, increasing=True)
        coef, *_ = np.linalg.lstsq(design, np.asarray(means)[idx], rcond=None)
        return float(coef[0])

    def describe(self) -> str:
        return f"{self.kind.value}:{self.order}"
