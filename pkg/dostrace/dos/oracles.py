"""Closed-form references for the free lattice Laplacian."""

from typing import Sequence, Union

import numpy as np

ArrayLike = Union[float, np.ndarray]


def dft_heat_diagonal(extents: Union[int, Sequence[int]], t: float) -> float:
    """
    Heat-kernel diagonal of the periodic free Laplacian on a box.

    Per axis (1/N) Σ_k e^{−t(2−2cos(2πk/N))}; the box value is the product
    over axes. For large N one axis tends to e^{−2t} I₀(2t).
    """
    if np.isscalar(extents):
        extents = [int(extents)]
    value = 1.0
    for n in extents:
        k = np.arange(n)
        value *= float(np.mean(np.exp(-t * (2.0 - 2.0 * np.cos(2.0 * np.pi * k / n)))))
    return value


def lattice_dos_density(lam: ArrayLike) -> ArrayLike:
    """ρ₁(λ) = 1/(π√(λ(4−λ))) on (0, 4), zero outside."""
    arr = np.asarray(lam, dtype=float)
    out = np.zeros_like(arr)
    inside = (arr > 0) & (arr < 4)
    out[inside] = 1.0 / (np.pi * np.sqrt(arr[inside] * (4.0 - arr[inside])))
    return float(out) if np.ndim(lam) == 0 else out


def lattice_dos_cdf(lam: ArrayLike) -> ArrayLike:
    """∫_{−∞}^{λ} ρ₁ = arccos(1 − λ/2)/π, clamped to [0, 1]."""
    arr = np.clip(np.asarray(lam, dtype=float), 0.0, 4.0)
    out = np.arccos(1.0 - arr / 2.0) / np.pi
    return float(out) if np.ndim(lam) == 0 else out
