"""Closed balls, distance fields and the weight field w on a lattice box."""

import csv
import logging
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from ..errors import ParameterError
from ..models.geometry import LatticeGeometry, WeightField

logger = logging.getLogger(__name__)


def distance_field(geom: LatticeGeometry) -> np.ndarray:
    """
    Exact distance key of every site from the basepoint.

    Squared integer length for the euclidean metric, integer length for ℓ¹;
    periodic boxes use the minimum-image displacement.
    """
    return np.array(geom.distance_keys)


def ball_volume(geom: LatticeGeometry, R: float) -> int:
    """Number of sites in the closed ball B(x₀, R)."""
    key = geom.radius_key(R)
    return int(np.searchsorted(geom.sorted_keys, key, side="right"))


def ball_indicator(geom: LatticeGeometry, R: float) -> np.ndarray:
    """Site mask of B(x₀, R)."""
    return geom.distance_keys <= geom.radius_key(R)


def weight_field(geom: LatticeGeometry) -> WeightField:
    """w(x) = 1/(1 + |B(x₀, d(x, x₀))|) on every site."""
    counts = np.searchsorted(geom.sorted_keys, geom.distance_keys, side="right")
    return WeightField(1.0 / (1.0 + counts), geometry=geom, basepoint=geom.basepoint_index)


def radius_for_epsilon(geom: LatticeGeometry, eps: float) -> Optional[float]:
    """
    Largest achieved radius R with 1/(1 + |B(x₀, R)|) >= ε.

    Returns:
        R(ε), or None when even the one-site ball has weight below ε
    """
    if not eps > 0:
        raise ParameterError(f"epsilon must be positive, got {eps}")
    keys = np.unique(geom.sorted_keys)
    weights = 1.0 / (1.0 + np.searchsorted(geom.sorted_keys, keys, side="right"))
    admitted = keys[weights >= eps]
    if admitted.size == 0:
        return None
    return geom.key_radius(int(admitted[-1]))


def write_field_csv(
    path: Union[str, Path], values: Sequence[float], header: Optional[str] = None
) -> Path:
    """Write a per-site field as ``site,value`` rows."""
    path = Path(path)
    with path.open("w", newline="") as f:
        if header:
            f.write(f"# {header}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["site", "value"])
        for site, value in enumerate(np.asarray(values).ravel()):
            writer.writerow([site, format(float(value), ".17g")])
    logger.info("Wrote %s", path)
    return path
