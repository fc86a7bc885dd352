"""Enums for the density-of-states toolkit."""

from enum import Enum


class Metric(str, Enum):
    """Lattice distance used for balls."""

    EUCLIDEAN = "euclidean"
    L1 = "l1"  # graph distance on the hypercubic lattice


class Boundary(str, Enum):
    """How a finite box truncates the infinite lattice."""

    DIRICHLET = "dirichlet"
    PERIODIC = "periodic"


class ProfileKind(str, Enum):
    """Volume-growth profile families."""

    POWER = "power"
    STRETCHED_EXP = "stretched-exp"
    EXP = "exp"
    TABLE = "table"


class Representation(str, Enum):
    """How a growth profile is evaluated."""

    CLOSED_FORM = "closed-form"
    TABULATED = "tabulated"


class TailVerdict(str, Enum):
    """Finite-data verdict on ℓ₂ membership of a sequence."""

    SUMMABLE = "summable"
    DIVERGENT = "divergent"
    INCONCLUSIVE = "inconclusive"


class SurrogateKind(str, Enum):
    """Extended-limit surrogates applied to log-Cesàro means."""

    LAST_VALUE = "last-value"
    TAIL_MEAN = "tail-mean"
    DYADIC_AGREEMENT = "dyadic-agreement"
    LOG_EXTRAPOLATION = "log-extrapolation"


class ProbeKind(str, Enum):
    """Random probe vectors for stochastic traces."""

    RADEMACHER = "rademacher"
    GAUSSIAN = "gaussian"


class HeatMethod(str, Enum):
    """How e^{-tP} is applied."""

    EXACT_EIG = "exact-eig"
    CHEBYSHEV = "chebyshev"


class TraceMode(str, Enum):
    """Exact diagonalisation or Hutchinson estimation of a weighted trace."""

    EXACT = "exact"
    STOCHASTIC = "stochastic"


class EstimatorMethod(str, Enum):
    """The four DOS estimators."""

    BALL_AVERAGE = "ball-average"
    EPSILON = "epsilon"
    S_LIMIT = "s-limit"
    DIXMIER = "dixmier"


class SupertraceMode(str, Enum):
    """Weighting used for the supertrace of a graded pair."""

    BALL_AVERAGE = "ball-average"
    DIXMIER = "dixmier"
