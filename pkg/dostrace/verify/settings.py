"""Parameters shared by every verification testbed."""

from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..dos.estimators import DEFAULT_S_GRID


@dataclass
class VerifySettings:
    """
    Inputs of a ``verify`` run; each testbed reads the fields it needs.

    ``n`` is left unset to take the testbed's own default size.
    """

    n: Optional[int] = None
    t: float = 1.0
    p_spec: str = "free-laplacian"
    a_spec: str = "identity"
    b_spec: str = "harmonic"
    s_grid: Tuple[float, ...] = DEFAULT_S_GRID
    eps_grid: Optional[List[float]] = None
    trials: int = 1000
    n_max: int = 64
    r: float = 2.0
    q: float = 1.0
    seed: int = 1
    nodes: int = 32
    surrogate: str = "log-extrapolation:1"
    workers: Optional[int] = None
