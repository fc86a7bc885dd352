"""Commutators [P, M_w], the Duhamel identity and trace-norm diagnostics."""

import logging
from typing import List, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
from numpy.polynomial.legendre import leggauss

from ..configs.defaults import N_EXACT
from ..errors import CapabilityError, ParameterError
from ..lattice.balls import weight_field
from ..models.geometry import LatticeGeometry
from .hermitian import SparseHermitianOperator, build_lattice_laplacian

logger = logging.getLogger(__name__)

DUHAMEL_MAX = 128
MIN_NODES = 8


def commutator_with_multiplier(op: SparseHermitianOperator, field: np.ndarray) -> sp.csr_matrix:
    """[P, M_w] with entries P_xy (w(y) − w(x)); anti-Hermitian for real symmetric P."""
    w = np.asarray(field).ravel()
    if w.size != op.n or not np.all(np.isfinite(w)):
        raise ParameterError("field must be finite with one value per site")
    coo = op.matrix.tocoo()
    data = coo.data * (w[coo.col] - w[coo.row])
    out = sp.csr_matrix((data, (coo.row, coo.col)), shape=op.matrix.shape)
    out.eliminate_zeros()
    return out


def _heat(values: np.ndarray, vectors: np.ndarray, s: float) -> np.ndarray:
    return (vectors * np.exp(-s * values)) @ vectors.conj().T


def duhamel_residual(P: np.ndarray, W: np.ndarray, t: float, nodes: int = 32) -> float:
    """
    ‖[e^{−tP}, W] + ∫₀ᵗ e^{−sP}[P, W]e^{−(t−s)P} ds‖₂ with Gauss–Legendre quadrature.

    Args:
        P: Dense Hermitian matrix, at most 128 × 128
        W: Dense matrix of the same size
        t: Time, t >= 0
        nodes: Number of quadrature nodes (at least 8)

    Returns:
        Spectral norm of the difference of the two sides
    """
    P = np.asarray(P)
    W = np.asarray(W)
    n = P.shape[0]
    if n > DUHAMEL_MAX:
        raise CapabilityError("the Duhamel check", n, DUHAMEL_MAX)
    if nodes < MIN_NODES:
        raise ParameterError(f"Duhamel quadrature needs at least {MIN_NODES} nodes, got {nodes}")
    if t < 0:
        raise ParameterError(f"heat time must be non-negative, got {t}")
    values, vectors = np.linalg.eigh(P)
    heat_t = _heat(values, vectors, t)
    lhs = heat_t @ W - W @ heat_t
    commutator = P @ W - W @ P
    x, weights = leggauss(nodes)
    s_nodes = 0.5 * t * (x + 1.0)
    integral = np.zeros_like(lhs, dtype=np.result_type(lhs, commutator))
    for s, weight in zip(s_nodes, 0.5 * t * weights):
        integral = integral + weight * (
            _heat(values, vectors, s) @ commutator @ _heat(values, vectors, t - s)
        )
    return float(np.linalg.norm(lhs + integral, ord=2))


def trace_norm_diagnostic(
    op: SparseHermitianOperator, t: float, field: np.ndarray, n_exact: int = N_EXACT
) -> float:
    """‖e^{−tP}[P, M_w]‖₁ on the truncation, from exact singular values."""
    if t < 0:
        raise ParameterError(f"heat time must be non-negative, got {t}")
    commutator = commutator_with_multiplier(op, field)
    if commutator.nnz == 0:
        return 0.0
    values, vectors = op.eigh(n_exact)
    product = _heat(values, vectors, t) @ commutator.toarray()
    return float(np.sum(np.linalg.svd(product, compute_uv=False)))


def trace_norm_growth(
    geometries: Sequence[LatticeGeometry], t: float
) -> Tuple[List[Tuple[int, float]], float]:
    """
    Trace norms of e^{−tΔ}[Δ, M_w] for the lattice Laplacian across box sizes.

    Returns:
        (sites, trace norm) per geometry and the ratio of the last two values
    """
    if len(geometries) < 2:
        raise ParameterError("trace-norm growth needs at least two geometries")
    rows = []
    for geom in geometries:
        op = build_lattice_laplacian(geom)
        rows.append((geom.n_sites, trace_norm_diagnostic(op, t, weight_field(geom).values)))
    ratio = rows[-1][1] / rows[-2][1] if rows[-2][1] > 0 else float("inf")
    logger.info("Trace-norm growth over %s: ratio %.4f", [n for n, _ in rows], ratio)
    return rows, ratio
