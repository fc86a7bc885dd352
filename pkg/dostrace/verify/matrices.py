"""Matrix models named by short spec strings such as ``random-psd:3`` or ``harmonic``."""

from typing import Tuple

import numpy as np
import scipy.sparse as sp

from ..configs.defaults import N_EXACT
from ..errors import CapabilityError, ParameterError
from ..models.geometry import LatticeGeometry
from ..operators.hermitian import SparseHermitianOperator, build_lattice_laplacian


def split_spec(spec: str) -> Tuple[str, str]:
    kind, _, param = spec.strip().partition(":")
    return kind, param


def _number(spec: str, param: str, cast=float):
    try:
        return cast(param)
    except ValueError as exc:
        raise ParameterError(f"{spec}: expected a number after ':', got {param!r}") from exc


def wishart(n: int, seed: int) -> np.ndarray:
    """G Gᵀ/n for a seeded standard normal n × n matrix G."""
    if n > N_EXACT:
        raise CapabilityError("a dense random matrix", n, N_EXACT)
    g = np.random.default_rng(seed).standard_normal((n, n))
    return g @ g.T / n


def operator_from_spec(spec: str, n: int) -> SparseHermitianOperator:
    """
    The operator P of the matrix main-theorem model.

    Args:
        spec: ``free-laplacian``, ``zero``, ``scalar:c`` or ``random-sym:seed``
        n: Dimension

    Returns:
        The operator as a SparseHermitianOperator
    """
    kind, param = split_spec(spec)
    if kind == "free-laplacian":
        return build_lattice_laplacian(LatticeGeometry.chain(n))
    if kind == "zero":
        return SparseHermitianOperator(sp.csr_matrix((n, n)), name="zero")
    if kind == "scalar":
        c = _number(spec, param)
        return SparseHermitianOperator(c * sp.identity(n, format="csr"), name=spec)
    if kind == "random-sym":
        return SparseHermitianOperator(wishart(n, _number(spec, param or "0", int)), name=spec)
    raise ParameterError(
        f"unknown operator spec {spec!r}; use free-laplacian, zero, scalar:c or random-sym:seed"
    )


def matrix_from_spec(spec: str, n: int) -> np.ndarray:
    """
    A PSD matrix for the bridge testbed; diagonal models come back as 1-D arrays.

    Specs: ``identity``, ``harmonic`` (diag 1/(k+1)), ``scaled-harmonic:c``,
    ``converging:a`` (diag a(1 + 1/(k+1))), ``finite-rank:r`` and
    ``random-psd:seed``.
    """
    kind, param = split_spec(spec)
    k = np.arange(n, dtype=float)
    if kind == "identity":
        return np.ones(n)
    if kind == "harmonic":
        return 1.0 / (k + 1.0)
    if kind == "scaled-harmonic":
        return _number(spec, param) / (k + 1.0)
    if kind == "converging":
        return _number(spec, param) * (1.0 + 1.0 / (k + 1.0))
    if kind == "finite-rank":
        rank = _number(spec, param, int)
        if not 0 <= rank <= n:
            raise ParameterError(f"{spec}: rank must lie in [0, {n}]")
        return (k < rank).astype(float)
    if kind == "random-psd":
        return wishart(n, _number(spec, param or "0", int))
    raise ParameterError(f"unknown matrix spec {spec!r}")


def in_eigenbasis(a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Reduce the pair (A, B) to B's eigenvalues λ_j and A's diagonal (U*AU)_jj.

    Every trace Tr(A g(B)) equals Σ_j a_j g(λ_j), so both bridge families only
    need these two vectors. Eigenvalues come back in decreasing order.
    """
    if np.ndim(b) == 1:
        values, weights = np.asarray(b, dtype=float), (np.diag(a) if np.ndim(a) == 2 else a)
    else:
        values, vectors = np.linalg.eigh(b)
        if np.ndim(a) == 1:
            weights = (np.abs(vectors) ** 2).T @ a
        else:
            weights = np.real(np.einsum("ij,ik,kj->j", vectors.conj(), a, vectors))
    order = np.argsort(-values, kind="stable")
    return np.clip(values[order], 0.0, None), np.asarray(weights, dtype=float)[order]
