"""On-site potential strategies."""

from typing import Sequence

import numpy as np

from ..errors import ParameterError
from ..models.geometry import LatticeGeometry
from .base import PotentialStrategy


class ConstantPotential(PotentialStrategy):
    """V ≡ c."""

    def __init__(self, c: float = 0.0):
        self.c = float(c)

    def values(self, geometry: LatticeGeometry) -> np.ndarray:
        return np.full(geometry.n_sites, self.c)

    def describe(self) -> str:
        return f"constant:{self.c:g}"


class IIDUniformPotential(PotentialStrategy):
    """
    Independent uniform[a, b] values per site.

    Site i draws from its own stream keyed by (seed, i), so its value depends
    only on the seed and its flat index, never on how many sites follow it.
    """

    def __init__(self, a: float = 0.0, b: float = 1.0, seed: int = 0):
        if b < a:
            raise ParameterError(f"uniform interval needs b >= a, got [{a}, {b}]")
        if seed < 0:
            raise ParameterError(f"potential seed must be non-negative, got {seed}")
        self.a = float(a)
        self.b = float(b)
        self.seed = int(seed)

    def site_value(self, site: int) -> float:
        return float(np.random.default_rng([self.seed, site]).uniform(self.a, self.b))

    def values(self, geometry: LatticeGeometry) -> np.ndarray:
        if self.a == self.b:
            return np.full(geometry.n_sites, self.a)
        return np.array([self.site_value(i) for i in range(geometry.n_sites)])

    def describe(self) -> str:
        return f"iid-uniform:[{self.a:g},{self.b:g}]:seed={self.seed}"


class PeriodicTablePotential(PotentialStrategy):
    """V(x) = table[x mod shape], the table tiling the box periodically."""

    def __init__(self, table: Sequence):
        self.table = np.asarray(table, dtype=float)
        if self.table.size == 0:
            raise ParameterError("periodic potential table is empty")

    def values(self, geometry: LatticeGeometry) -> np.ndarray:
        table = self.table
        if table.ndim == 1 and geometry.dim > 1:
            # a flat table repeats along the first axis only
            table = table.reshape((-1,) + (1,) * (geometry.dim - 1))
        if table.ndim != geometry.dim:
            raise ParameterError(
                f"potential table has {table.ndim} axes but the geometry has {geometry.dim}"
            )
        coords = geometry.coordinates()
        index = tuple(coords[:, axis] % table.shape[axis] for axis in range(geometry.dim))
        return table[index].astype(float)

    def describe(self) -> str:
        return f"periodic:{self.table.shape}"
