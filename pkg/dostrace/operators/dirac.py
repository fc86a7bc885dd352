"""Graded Dirac pairs and the magnetic (Hofstadter) torus model."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple, Union

import numpy as np
import scipy.sparse as sp

from ..configs.defaults import CUT_GAP_REL, N_EXACT
from ..errors import CapabilityError, GaugeError, ParameterError
from ..models.geometry import LatticeGeometry
from .hermitian import SparseHermitianOperator

logger = logging.getLogger(__name__)

DEGENERACY_TOL = 1e-9


@dataclass(eq=False)
class GradedDiracPair:
    """
    D₊ : S⁺ → S⁻ with D₋ = D₊*.

    S⁺ is the site space of ``geometry``. ``embedding`` is an isometry J from
    S⁻ into site space, used to read the S⁻ heat kernel on sites; when it is
    omitted S⁻ is the site space itself and D₊ must be square.
    """

    d_plus: np.ndarray
    geometry: LatticeGeometry
    embedding: Optional[np.ndarray] = None
    flux: Fraction = Fraction(0)
    n_flux: int = 0
    n_cut: int = 0
    cut_gap: float = float("inf")
    degenerate_cut: bool = False
    _spectra: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        self.d_plus = np.asarray(self.d_plus)
        m, n = self.d_plus.shape
        if n != self.geometry.n_sites:
            raise ParameterError(
                f"D₊ acts on {n} sites but the geometry has {self.geometry.n_sites}"
            )
        if self.embedding is None and m != n:
            raise ParameterError("a rectangular D₊ needs an embedding of S⁻ into site space")
        if self.embedding is not None and self.embedding.shape != (n, m):
            raise ParameterError(
                f"embedding must have shape {(n, m)}, got {self.embedding.shape}"
            )

    @property
    def dim_plus(self) -> int:
        return int(self.d_plus.shape[1])

    @property
    def dim_minus(self) -> int:
        return int(self.d_plus.shape[0])

    @property
    def d_minus(self) -> np.ndarray:
        return self.d_plus.conj().T

    def plus_square(self) -> np.ndarray:
        """D₋D₊ on S⁺."""
        return self.d_minus @ self.d_plus

    def minus_square(self) -> np.ndarray:
        """D₊D₋ on S⁻."""
        return self.d_plus @ self.d_minus

    def grading(self) -> np.ndarray:
        """η = diag(+1 on S⁺, −1 on S⁻)."""
        return np.concatenate([np.ones(self.dim_plus), -np.ones(self.dim_minus)])

    def square_eigh(self, which: str) -> Tuple[np.ndarray, np.ndarray]:
        """Eigendecomposition of D₋D₊ (``"plus"``) or D₊D₋ (``"minus"``), cached."""
        if which not in self._spectra:
            matrix = self.plus_square() if which == "plus" else self.minus_square()
            if matrix.shape[0] > N_EXACT:
                raise CapabilityError("the graded-pair spectrum", matrix.shape[0], N_EXACT)
            values, vectors = np.linalg.eigh(matrix)
            self._spectra[which] = (np.clip(values, 0.0, None), vectors)
        return self._spectra[which]

    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(self.d_plus, compute_uv=False)

    def supersymmetry_gap(self, threshold: float = 1e-9) -> float:
        """Largest difference between the sorted nonzero spectra of the two squares."""
        plus = self.square_eigh("plus")[0]
        minus = self.square_eigh("minus")[0]
        scale = max(1.0, float(plus.max(initial=0.0)))
        plus = np.sort(plus[plus > threshold * scale])
        minus = np.sort(minus[minus > threshold * scale])
        if plus.size != minus.size:
            return float("inf")
        return float(np.max(np.abs(plus - minus), initial=0.0))


def parse_flux(flux: Union[str, float, Fraction]) -> Fraction:
    """Flux per plaquette in units of 2π as a reduced fraction in [0, 1)."""
    value = Fraction(flux).limit_denominator(10_000) if not isinstance(flux, Fraction) else flux
    if not 0 <= value < 1:
        raise ParameterError(f"flux must lie in [0, 1), got {value}")
    return value


def magnetic_laplacian(Lx: int, Ly: int, flux: Fraction) -> SparseHermitianOperator:
    """
    4 − T_x − T_x* − T_y − T_y* on the Lx × Ly torus in Landau gauge.

    (T_x ψ)(x, y) = ψ(x+1, y) and (T_y ψ)(x, y) = e^{2πiφx} ψ(x, y+1).
    """
    if Lx % flux.denominator:
        raise GaugeError(
            f"Landau gauge with flux {flux} needs {flux.denominator} to divide Lx={Lx}"
        )
    x, y = np.divmod(np.arange(Lx * Ly), Ly)
    right = ((x + 1) % Lx) * Ly + y
    up = x * Ly + (y + 1) % Ly
    phase = np.exp(2j * np.pi * float(flux) * x)
    n = Lx * Ly
    site = np.arange(n)
    rows = np.concatenate([site, site, right, site, up])
    cols = np.concatenate([site, right, site, up, site])
    hops = [-np.ones(n), -np.ones(n), -phase, -phase.conj()]
    data = np.concatenate([np.full(n, 4.0 + 0j)] + hops)
    matrix = sp.coo_matrix((data, (rows, cols)), shape=(n, n)).tocsr()
    return SparseHermitianOperator(matrix, name=f"magnetic-laplacian[{Lx}x{Ly},{flux}]")


def band_edge_cut(w: np.ndarray, band: int) -> Tuple[int, float]:
    """
    Count of eigenvalues below the widest gap at a magnetic band edge.

    Candidate cuts are the multiples of ``band`` in the lower half of the
    sorted spectrum ``w``. Ties go to the lowest edge. Returns ``(0, inf)``
    when there is no candidate.
    """
    edges = np.arange(band, w.size // 2 + 1, band) if 0 < band < w.size else np.array([], int)
    if edges.size == 0:
        return 0, float("inf")
    gaps = w[edges] - w[edges - 1]
    best = int(np.argmax(gaps))
    return int(edges[best]), float(gaps[best])


def build_hofstadter_dirac(
    Lx: int, Ly: int, flux: Union[str, float, Fraction]
) -> GradedDiracPair:
    """
    Graded pair from the magnetic Laplacian H on the Lx × Ly torus.

    Magnetic translations split the spectrum of H into q bands of Lx·Ly/q
    states. The cut sits at the band edge with the widest spectral gap in the
    lower half of the spectrum. With H = V diag(w) V*, the eigenvectors below
    the cut span ker D₊ and D₊ = diag(√w_{≥cut}) V_{≥cut}* maps sites onto the
    orthogonal complement, so dim ker D₊ − dim ker D₋ is the number of states
    below the cut. Flux counting predicts p·Lx·Ly/q; it is stored as
    ``n_flux`` for comparison and never used to place the cut.

    A gap at the cut below ``CUT_GAP_REL`` times the spectral width marks the
    cut as degenerate: the kernel is then a choice among eigenvectors of one
    eigenvalue, not a spectral subspace.

    Raises:
        GaugeError: If q does not divide Lx
    """
    value = parse_flux(flux)
    H = magnetic_laplacian(Lx, Ly, value)
    geometry = LatticeGeometry((Lx, Ly))
    w, V = H.eigh()
    w = np.clip(w, 0.0, None)
    scale = max(1.0, float(w[-1]))
    # numerical zero modes of H are exact zeros of D₊
    w[w < DEGENERACY_TOL * scale] = 0.0

    n_cut, gap = band_edge_cut(w, Lx * Ly // value.denominator)
    n_flux = value.numerator * Lx * Ly // value.denominator
    degenerate = gap <= CUT_GAP_REL * scale
    if degenerate:
        logger.warning(
            "Flux %s on %dx%d: no spectral gap at the band edge %d (gap %.3g); "
            "the zero-mode count is ambiguous",
            value,
            Lx,
            Ly,
            n_cut,
            gap,
        )
    elif n_cut != n_flux:
        logger.info(
            "Flux %s on %dx%d: %d states below the widest band gap, flux counting gives %d",
            value,
            Lx,
            Ly,
            n_cut,
            n_flux,
        )
    if Ly % value.denominator:
        logger.info(
            "q=%d does not divide Ly=%d; the zero-mode density is not uniform",
            value.denominator,
            Ly,
        )

    upper = V[:, n_cut:]
    d_plus = np.sqrt(w[n_cut:])[:, None] * upper.conj().T
    return GradedDiracPair(
        d_plus=d_plus,
        geometry=geometry,
        embedding=upper,
        flux=value,
        n_flux=n_flux,
        n_cut=n_cut,
        cut_gap=gap,
        degenerate_cut=bool(degenerate),
    )
