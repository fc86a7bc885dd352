"""Lattice geometry models: boxes of the hypercubic lattice, weight fields and cells."""

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Tuple

import numpy as np

from ..errors import GeometryError, ParameterError
from .enums import Boundary, Metric

SITE_CAP = 1 << 22


@dataclass(frozen=True)
class LatticeGeometry:
    """
    A finite box of Z^d centred on a basepoint x₀.

    Sites are numbered in C order of their coordinates. The basepoint is the
    site with coordinate ``extent // 2`` on every axis. Distances are kept as
    exact integers: squared euclidean length or ℓ¹ length of the (minimum
    image) displacement.
    """

    extents: Tuple[int, ...]
    metric: Metric = Metric.EUCLIDEAN
    boundary: Boundary = Boundary.PERIODIC
    site_cap: int = SITE_CAP

    def __post_init__(self):
        extents = tuple(int(e) for e in self.extents)
        if not extents or any(e < 1 for e in extents):
            raise GeometryError(f"box extents must be positive integers, got {self.extents}")
        object.__setattr__(self, "extents", extents)
        object.__setattr__(self, "metric", Metric(self.metric))
        object.__setattr__(self, "boundary", Boundary(self.boundary))
        if self.n_sites > self.site_cap:
            raise GeometryError(f"box has {self.n_sites} sites, above the cap {self.site_cap}")

    @classmethod
    def chain(cls, n: int, boundary: Boundary = Boundary.PERIODIC) -> "LatticeGeometry":
        """One-dimensional chain of ``n`` sites."""
        return cls((n,), Metric.EUCLIDEAN, boundary)

    @property
    def dim(self) -> int:
        return len(self.extents)

    @property
    def n_sites(self) -> int:
        return int(math.prod(self.extents))

    @property
    def basepoint(self) -> Tuple[int, ...]:
        return tuple(e // 2 for e in self.extents)

    @property
    def basepoint_index(self) -> int:
        return int(np.ravel_multi_index(self.basepoint, self.extents))

    @property
    def periodic(self) -> bool:
        return self.boundary == Boundary.PERIODIC

    def coordinates(self) -> np.ndarray:
        """Integer coordinates of every site, shape (n_sites, dim)."""
        grids = np.indices(self.extents).reshape(self.dim, -1)
        return grids.T.copy()

    def displacements(self) -> np.ndarray:
        """Absolute per-axis displacement from the basepoint (minimum image when periodic)."""
        delta = np.abs(self.coordinates() - np.asarray(self.basepoint))
        if self.periodic:
            delta = np.minimum(delta, np.asarray(self.extents) - delta)
        return delta

    @cached_property
    def distance_keys(self) -> np.ndarray:
        """Exact integer distance key per site (squared length for the euclidean metric)."""
        delta = self.displacements().astype(np.int64)
        if self.metric == Metric.EUCLIDEAN:
            keys = np.sum(delta * delta, axis=1)
        else:
            keys = np.sum(delta, axis=1)
        keys.setflags(write=False)
        return keys

    @cached_property
    def sorted_keys(self) -> np.ndarray:
        keys = np.sort(self.distance_keys)
        keys.setflags(write=False)
        return keys

    def distances(self) -> np.ndarray:
        """Distance of every site from the basepoint as floats."""
        if self.metric == Metric.EUCLIDEAN:
            return np.sqrt(self.distance_keys.astype(float))
        return self.distance_keys.astype(float)

    def radius_key(self, radius: float) -> int:
        """Largest distance key inside the closed ball of the given radius."""
        if radius < 0:
            raise ParameterError(f"radius must be non-negative, got {radius}")
        if self.metric == Metric.EUCLIDEAN:
            r2 = radius * radius
            return int(math.floor(r2 + 1e-9 * max(1.0, r2)))
        return int(math.floor(radius + 1e-12))

    def key_radius(self, key: int) -> float:
        """Radius corresponding to a distance key."""
        return math.sqrt(key) if self.metric == Metric.EUCLIDEAN else float(key)

    @property
    def max_distance(self) -> float:
        return self.key_radius(int(self.sorted_keys[-1]))

    @property
    def guard_radius(self) -> float:
        """Largest averaging radius that keeps a guard band of a quarter box."""
        smallest = min(self.extents)
        return smallest / 2 - smallest / 4

    def describe(self) -> str:
        shape = "x".join(str(e) for e in self.extents)
        return f"d={self.dim},extents={shape},{self.metric.value},{self.boundary.value}"


@dataclass(frozen=True, eq=False)
class WeightField:
    """Per-site values of w(x) = (1+|B(x₀,d(x,x₀))|)^{-1} on a geometry."""

    values: np.ndarray
    geometry: Optional[LatticeGeometry] = None
    basepoint: int = 0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).ravel()
        if values.size and (np.any(values <= 0) or np.any(values > 1)):
            raise ParameterError("weight values must lie in (0, 1]")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.size)

    def power(self, s: float) -> np.ndarray:
        return self.values**s

    def mask(self, eps: float) -> np.ndarray:
        """χ_{[ε,∞)}(w) as a site mask."""
        return self.values >= eps

    @property
    def achieved(self) -> np.ndarray:
        """Distinct weight values, largest first."""
        return np.unique(self.values)[::-1]


@dataclass(frozen=True, eq=False)
class CellDecomposition:
    """Assignment of sites to cells; ``labels[i]`` is the cell of site ``i``."""

    labels: np.ndarray
    side: int = 1
    n_cells: int = field(init=False)

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64).ravel()
        if labels.size and labels.min() < 0:
            raise ParameterError("cell labels must be non-negative")
        _, dense = np.unique(labels, return_inverse=True)
        dense = dense.astype(np.int64)
        dense.setflags(write=False)
        object.__setattr__(self, "labels", dense)
        object.__setattr__(self, "n_cells", int(dense.max()) + 1 if dense.size else 0)
