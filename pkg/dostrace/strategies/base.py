"""Base strategy classes for limit surrogates and potentials."""

from abc import ABC, abstractmethod

import numpy as np

from ..models.enums import SurrogateKind
from ..models.geometry import LatticeGeometry


class ExtendedLimitSurrogate(ABC):
    """Base class for the computable stand-ins of an extended limit ω."""

    kind: SurrogateKind

    @abstractmethod
    def apply(self, means: np.ndarray) -> float:
        """
        Reduce a sequence of log-Cesàro means to a single value.

        Args:
            means: The means M_0, ..., M_{N-1}

        Returns:
            The surrogate value of ω(M)
        """
        pass

    def tolerance(self, value: float) -> float:
        """
        Agreement tolerance used by the convergence flag.

        Args:
            value: The surrogate value

        Returns:
            Largest spread of the diagnostic window still counted as converged
        """
        return 1e-2 * max(1.0, abs(value))

    @abstractmethod
    def describe(self) -> str:
        """Short spec string, e.g. ``tail-mean:0.2``."""
        pass


class PotentialStrategy(ABC):
    """Base class for on-site potentials V added to a lattice Laplacian."""

    @abstractmethod
    def values(self, geometry: LatticeGeometry) -> np.ndarray:
        """
        Evaluate the potential on every site.

        Args:
            geometry: The lattice box, sites in C order

        Returns:
            Array of length ``geometry.n_sites``
        """
        pass

    @abstractmethod
    def describe(self) -> str:
        pass
