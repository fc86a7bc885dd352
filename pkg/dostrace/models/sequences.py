"""Sequence types: singular-value sequences, Lorentz parameters and Dixmier estimates."""

import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from ..errors import ParameterError


@dataclass(frozen=True, eq=False)
class SingularSequence:
    """Finite non-increasing non-negative sequence standing for μ(T) or μ(x)."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).ravel()
        if values.size and (np.any(values < 0) or not np.all(np.isfinite(values))):
            raise ParameterError("singular values must be finite and non-negative")
        if values.size > 1 and np.any(np.diff(values) > 0):
            raise ParameterError("singular values must be non-increasing")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.size)

    def __iter__(self):
        return iter(self.values.tolist())

    def to_list(self) -> List[float]:
        return self.values.tolist()


@dataclass(frozen=True)
class QuasiNormParams:
    """Indices (p, q) of a Lorentz sequence space ℓ_{p,q}; ``math.inf`` is allowed for both."""

    p: float
    q: float

    def __post_init__(self):
        for name in ("p", "q"):
            value = getattr(self, name)
            if math.isnan(value) or value <= 0:
                raise ParameterError(f"Lorentz index {name} must be positive, got {value}")

    @property
    def weak(self) -> bool:
        """True for the weak spaces ℓ_{p,∞}."""
        return math.isinf(self.q)


@dataclass
class DixmierEstimate:
    """Surrogate value of a Dixmier trace together with its convergence evidence."""

    value: float
    means: List[float] = field(default_factory=list)
    converged: bool = False
    spread: float = 0.0
    tolerance: float = 0.0
    surrogate: str = ""

    @property
    def n_terms(self) -> int:
        return len(self.means)
