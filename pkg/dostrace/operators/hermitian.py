"""Sparse Hermitian operators on lattice boxes: builders, spectral bounds and export."""

import logging
import threading
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import numpy as np
import scipy.io
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from ..configs.defaults import BOUNDS_PAD, DENSE_BOUNDS_MAX, N_EXACT
from ..errors import CapabilityError, ParameterError
from ..models.geometry import LatticeGeometry
from ..strategies.base import PotentialStrategy

logger = logging.getLogger(__name__)


class SparseHermitianOperator:
    """
    A Hermitian matrix in CSR layout with cached spectral data.

    Symmetry is checked exactly on the stored entries. Spectral bounds and the
    dense eigendecomposition are computed at most once and shared between
    threads.
    """

    def __init__(self, matrix, name: str = ""):
        m = sp.csr_matrix(matrix)
        if m.shape[0] != m.shape[1]:
            raise ParameterError(f"operator must be square, got shape {m.shape}")
        m.sum_duplicates()
        m.sort_indices()
        if (m != m.conj().T).nnz:
            raise ParameterError("operator is not Hermitian")
        self.matrix = m
        self.name = name
        self._bounds: Optional[Tuple[float, float]] = None
        self._eig: Optional[Tuple[np.ndarray, np.ndarray]] = None
        self._lock = threading.Lock()

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.matrix.data)

    def matvec(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def diagonal(self) -> np.ndarray:
        return self.matrix.diagonal()

    def as_linear_operator(self) -> LinearOperator:
        return LinearOperator(self.matrix.shape, matvec=self.matvec, dtype=self.matrix.dtype)

    def shifted(self, c: float) -> "SparseHermitianOperator":
        """P + c·I."""
        shifted = SparseHermitianOperator(
            self.matrix + c * sp.identity(self.n, format="csr"), name=self.name
        )
        if self._bounds is not None:
            shifted._bounds = (self._bounds[0] + c, self._bounds[1] + c)
        return shifted

    def eigh(self, limit: int = N_EXACT) -> Tuple[np.ndarray, np.ndarray]:
        """
        Dense eigendecomposition, computed once.

        Raises:
            CapabilityError: If the operator has more than ``limit`` sites
        """
        if self.n > limit:
            raise CapabilityError("dense diagonalisation", self.n, limit)
        with self._lock:
            if self._eig is None:
                logger.debug("Diagonalising %s (N=%d)", self.name or "operator", self.n)
                self._eig = np.linalg.eigh(self.dense())
            return self._eig

    def eigenvalues(self, limit: int = N_EXACT) -> np.ndarray:
        return self.eigh(limit)[0]

    def __repr__(self) -> str:
        return f"SparseHermitianOperator(n={self.n}, nnz={self.matrix.nnz}, name={self.name!r})"


def build_lattice_laplacian(geom: LatticeGeometry) -> SparseHermitianOperator:
    """
    Second-order finite-difference −Δ on the box.

    The diagonal is 2·dim on every site; each nearest-neighbour bond carries −1.
    Dirichlet boxes drop the bonds leaving the box, periodic boxes wrap them.
    """
    coords = geom.coordinates()
    n = geom.n_sites
    rows, cols = [], []
    for axis, extent in enumerate(geom.extents):
        forward = coords.copy()
        forward[:, axis] += 1
        if geom.periodic:
            forward[:, axis] %= extent
            keep = np.ones(n, dtype=bool)
        else:
            keep = forward[:, axis] < extent
        src = np.flatnonzero(keep)
        dst = np.ravel_multi_index(tuple(forward[keep].T), geom.extents)
        rows.extend([src, dst])
        cols.extend([dst, src])
    rows = np.concatenate(rows + [np.arange(n)])
    cols = np.concatenate(cols + [np.arange(n)])
    data = np.concatenate([-np.ones(rows.size - n), np.full(n, 2.0 * geom.dim)])
    matrix = sp.coo_matrix((data, (rows, cols)), shape=(n, n)).tocsr()
    return SparseHermitianOperator(matrix, name=f"laplacian[{geom.describe()}]")


def build_schrodinger(
    geom: LatticeGeometry, potential: PotentialStrategy
) -> SparseHermitianOperator:
    """−Δ + M_V with V taken from a potential strategy."""
    laplacian = build_lattice_laplacian(geom)
    values = potential.values(geom)
    matrix = laplacian.matrix + sp.diags(values, format="csr")
    return SparseHermitianOperator(matrix, name=f"schrodinger[{potential.describe()}]")


def gershgorin_bounds(op: SparseHermitianOperator) -> Tuple[float, float]:
    """Interval containing every Gershgorin disc."""
    m = op.matrix
    diag = m.diagonal().real
    radius = np.asarray(abs(m).sum(axis=1)).ravel() - np.abs(diag)
    return float(np.min(diag - radius)), float(np.max(diag + radius))


def _ritz_value(op: SparseHermitianOperator, which: str, v0: np.ndarray) -> float:
    values = eigsh(
        op.matrix, k=1, which=which, v0=v0, tol=1e-8, maxiter=20 * op.n, return_eigenvectors=False
    )
    return float(values[0])


def spectral_bounds(op: SparseHermitianOperator) -> Tuple[float, float]:
    """
    Interval [λmin, λmax] containing the spectrum, cached on the operator.

    Small operators are diagonalised; larger ones use Lanczos extremal Ritz
    values padded by 1% of the width and clipped to the Gershgorin interval.
    Lanczos failures fall back to Gershgorin.
    """
    if op._bounds is not None:
        return op._bounds
    if op.n <= DENSE_BOUNDS_MAX:
        values = np.linalg.eigvalsh(op.dense())
        lo, hi = float(values[0]), float(values[-1])
        pad = BOUNDS_PAD * max(hi - lo, 1e-12 * max(1.0, abs(hi)))
        bounds = (lo - pad, hi + pad)
    else:
        g_lo, g_hi = gershgorin_bounds(op)
        v0 = np.random.default_rng(0).standard_normal(op.n)
        try:
            hi = _ritz_value(op, "LA", v0)
            lo = _ritz_value(op, "SA", v0)
            pad = BOUNDS_PAD * max(hi - lo, 1e-12)
            bounds = (max(lo - pad, g_lo), min(hi + pad, g_hi))
        except ArpackNoConvergence:
            logger.warning("Lanczos did not converge for %r; using Gershgorin bounds", op)
            bounds = (g_lo, g_hi)
    logger.debug("Spectral bounds of %r: [%g, %g]", op, *bounds)
    op._bounds = bounds
    return bounds


def integrated_dos(op: SparseHermitianOperator, energies: Sequence[float]) -> np.ndarray:
    """Fraction of eigenvalues <= E for each energy (exact path)."""
    values = op.eigenvalues()
    counts = np.searchsorted(values, np.asarray(energies, dtype=float), side="right")
    return counts / op.n


def export_matrix_market(
    op: SparseHermitianOperator, path: Union[str, Path], comment: str = ""
) -> Path:
    """Write the operator as a Matrix Market coordinate file."""
    path = Path(path)
    if path.suffix != ".mtx":
        path = path.with_suffix(".mtx")
    symmetry = "symmetric" if op.is_real else "hermitian"
    scipy.io.mmwrite(str(path), op.matrix, comment=comment, symmetry=symmetry)
    logger.info("Wrote %s", path)
    return path
