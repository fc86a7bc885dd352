"""Decreasing rearrangements, Lorentz quasinorms and direct sums of singular sequences."""

import heapq
import math
from typing import Iterable, Sequence

import numpy as np

from ..models.sequences import QuasiNormParams, SingularSequence


def decreasing_rearrangement(values: Iterable[float]) -> SingularSequence:
    """Absolute values sorted non-increasing."""
    if not isinstance(values, np.ndarray):
        values = list(values)
    arr = np.abs(np.asarray(values, dtype=float))
    return SingularSequence(np.sort(arr.ravel())[::-1])


def lorentz_quasinorm(seq: SingularSequence, params: QuasiNormParams) -> float:
    """
    Finite-truncation Lorentz quasinorm of a singular sequence.

    Finite q:   (Σ (k+1)^{q/p-1} μ(k)^q)^{1/q}, with weight (k+1)^{-1} when p = ∞.
    q = ∞:      sup (k+1)^{1/p} μ(k), the plain supremum when p = ∞ as well.

    Args:
        seq: Non-increasing sequence μ
        params: Lorentz indices

    Returns:
        The quasinorm (0 for the empty sequence)
    """
    mu = seq.values
    if mu.size == 0:
        return 0.0
    k1 = np.arange(1, mu.size + 1, dtype=float)
    p, q = params.p, params.q
    if math.isinf(q):
        if math.isinf(p):
            return float(mu.max())
        return float(np.max(k1 ** (1.0 / p) * mu))
    exponent = -1.0 if math.isinf(p) else q / p - 1.0
    return float(np.sum(k1**exponent * mu**q) ** (1.0 / q))


def direct_sum_singular_values(parts: Sequence[SingularSequence]) -> SingularSequence:
    """Singular values of a left-disjoint sum: k-way merge of the parts' sequences."""
    merged = list(heapq.merge(*(part.to_list() for part in parts), reverse=True))
    return SingularSequence(np.asarray(merged, dtype=float))
