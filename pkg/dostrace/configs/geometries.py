"""Named lattice boxes, accepted by ``--geom`` in place of a geometry string."""

from typing import Dict

from ..models.enums import Boundary, Metric
from ..models.geometry import LatticeGeometry

CHAIN_4096 = LatticeGeometry.chain(4096)
CHAIN_1024_DIRICHLET = LatticeGeometry.chain(1024, Boundary.DIRICHLET)
SQUARE_64 = LatticeGeometry((64, 64))
SQUARE_64_L1 = LatticeGeometry((64, 64), Metric.L1)

GEOMETRY_PRESETS: Dict[str, LatticeGeometry] = {
    "chain-4096": CHAIN_4096,
    "chain-1024-dirichlet": CHAIN_1024_DIRICHLET,
    "square-64": SQUARE_64,
    "square-64-l1": SQUARE_64_L1,
}
