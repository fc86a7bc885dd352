"""Cell decompositions and the ℓ_{p,∞}(L_∞) norm of a lattice field."""

import math
from typing import Optional

import numpy as np

from ..errors import ParameterError
from ..models.geometry import CellDecomposition, LatticeGeometry
from ..models.sequences import QuasiNormParams
from ..seqspace.lorentz import decreasing_rearrangement, lorentz_quasinorm


def singleton_cells(geom: LatticeGeometry) -> CellDecomposition:
    """One cell per site."""
    return CellDecomposition(np.arange(geom.n_sites), side=1)


def block_cells(geom: LatticeGeometry, b: int) -> CellDecomposition:
    """
    Cubes of side ``b`` aligned with the box corner.

    A trailing partial block along an axis forms a smaller cell of its own.
    """
    if b < 1:
        raise ParameterError(f"block side must be a positive integer, got {b}")
    blocks = geom.coordinates() // b
    shape = tuple(math.ceil(e / b) for e in geom.extents)
    labels = np.ravel_multi_index(tuple(blocks.T), shape)
    return CellDecomposition(labels, side=b)


def cell_sup_norms(field: np.ndarray, cells: CellDecomposition) -> np.ndarray:
    """‖f‖_{L_∞(cell)} for every cell."""
    values = np.abs(np.asarray(field, dtype=float).ravel())
    if values.size != cells.labels.size:
        raise ParameterError(
            f"field has {values.size} sites but the decomposition covers {cells.labels.size}"
        )
    sups = np.zeros(cells.n_cells)
    np.maximum.at(sups, cells.labels, values)
    return sups


def ell_p_infty_Linfty_norm(
    field: np.ndarray, cells: Optional[CellDecomposition] = None, p: float = 1.0
) -> float:
    """
    ‖f‖_{ℓ_{p,∞}(L_∞)}: per-cell sup norms, rearranged, then the weak-ℓ_p quasinorm.

    Args:
        field: Per-site values
        cells: Cell decomposition; singleton cells when omitted
        p: Lorentz index p > 0

    Returns:
        sup_k (k+1)^{1/p} μ(k) of the cell sup norms
    """
    if not p > 0:
        raise ParameterError(f"p must be positive, got {p}")
    values = np.asarray(field, dtype=float).ravel()
    if cells is None:
        cells = CellDecomposition(np.arange(values.size))
    mu = decreasing_rearrangement(cell_sup_norms(values, cells))
    return lorentz_quasinorm(mu, QuasiNormParams(p, math.inf))
