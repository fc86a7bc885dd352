"""Strategy implementations for limit surrogates and potentials."""

from .base import ExtendedLimitSurrogate, PotentialStrategy
from .potentials import ConstantPotential, IIDUniformPotential, PeriodicTablePotential
from .surrogates import (
    DyadicAgreementSurrogate,
    LastValueSurrogate,
    LogExtrapolationSurrogate,
    TailMeanSurrogate,
    dyadic_indices,
)

__all__ = [
    "ExtendedLimitSurrogate",
    "PotentialStrategy",
    "ConstantPotential",
    "IIDUniformPotential",
    "PeriodicTablePotential",
    "LastValueSurrogate",
    "TailMeanSurrogate",
    "DyadicAgreementSurrogate",
    "LogExtrapolationSurrogate",
    "dyadic_indices",
]
