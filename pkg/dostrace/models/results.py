"""Result models returned by the estimators, checkers and testbeds."""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .enums import EstimatorMethod, SupertraceMode, TailVerdict


@dataclass
class TraceEstimate:
    """A trace value with its standard error (0 for exact traces)."""

    value: float
    std_error: float = 0.0
    n_probes: int = 0


@dataclass
class EstimatorResult:
    """One DOS limit process: its approximants, the extrapolated value and a convergence flag."""

    method: EstimatorMethod
    value: float
    approximants: List[Tuple[float, float]] = field(default_factory=list)
    converged: bool = False
    std_error: float = 0.0
    t: Optional[float] = None
    extras: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.approximants:
            raise ValueError("an estimator result needs at least one approximant")

    @property
    def parameters(self) -> List[float]:
        return [p for p, _ in self.approximants]

    def relative_gap(self, reference: float) -> float:
        return abs(self.value - reference) / max(abs(reference), 1e-300)


@dataclass
class DOSMeasure:
    """Volume-normalised spectral measure: histogram masses plus Laplace-transform samples."""

    bin_edges: np.ndarray
    masses: np.ndarray
    mass_std_error: Optional[np.ndarray] = None
    laplace_samples: List[Tuple[float, float]] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.bin_edges = np.asarray(self.bin_edges, dtype=float)
        self.masses = np.asarray(self.masses, dtype=float)
        if self.bin_edges.size != self.masses.size + 1:
            raise ValueError("a histogram needs one more edge than masses")

    @property
    def total_mass(self) -> float:
        return float(self.masses.sum())

    @property
    def centres(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[1:] + self.bin_edges[:-1])

    def rows(self) -> List[Tuple[float, float, float]]:
        return [
            (float(lo), float(hi), float(m))
            for lo, hi, m in zip(self.bin_edges[:-1], self.bin_edges[1:], self.masses)
        ]


@dataclass
class TailReport:
    """Finite-data ℓ₂ verdict for a sequence of ratios."""

    partial_sum: float
    verdict: TailVerdict
    exponent: Optional[float] = None
    block_increment: Optional[float] = None

    @property
    def summable(self) -> bool:
        return self.verdict == TailVerdict.SUMMABLE


@dataclass
class PropertyDReport:
    """Both Property (D) conditions evaluated on a growth profile."""

    ell2_partial_sum: float
    ell2_tail_verdict: TailVerdict
    derivative_ratio_limit: float
    derivative_ratio_trend: float
    derivative_ratios: List[Tuple[float, float]]
    derivative_ok: bool
    K: int
    Rmax: float
    exponent: Optional[float] = None

    @property
    def passes(self) -> bool:
        return self.ell2_tail_verdict == TailVerdict.SUMMABLE and self.derivative_ok

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["passes"] = self.passes
        data["ell2_tail_verdict"] = self.ell2_tail_verdict.value
        return data


@dataclass
class PropertyCReport:
    """Discrete volume-ratio diagnostic |B((k+1)r)| / |B(kr)|."""

    ratios: List[float]
    final_ratio: float
    tends_to_one: bool


@dataclass
class InequalityReport:
    """Left and right side of a checked inequality."""

    lhs: float
    rhs: float
    holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class FuzzReport:
    """Aggregate of a randomized inequality or identity check."""

    name: str
    trials: int
    violations: int
    worst_ratio: float
    parameters: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class MainTheoremReport:
    """Both sides of Tr_ω(e^{-tP}W) = lim ε Tr(e^{-tP}χ_{[ε,∞)}(W)) on a matrix model."""

    n: int
    t: float
    p_spec: str
    dixmier_value: float
    epsilon_value: float
    dixmier_converged: bool
    epsilon_converged: bool

    @property
    def gap(self) -> float:
        return abs(self.dixmier_value - self.epsilon_value)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["gap"] = self.gap
        return data


@dataclass
class BridgeReport:
    """The s-family and ε-family limits of a pair (A, B)."""

    n: int
    s_value: float
    eps_value: float
    scale: float
    s_approximants: List[Tuple[float, float]]
    eps_approximants: List[Tuple[float, float]]
    s_converged: bool
    counting_check: Optional[float] = None
    truncation_bias: float = 0.0

    @property
    def gap(self) -> float:
        return abs(self.s_value - self.eps_value)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["gap"] = self.gap
        return data


@dataclass
class SupertraceResult:
    """Weighted supertraces of a graded pair over a list of times."""

    mode: SupertraceMode
    t_values: List[float]
    values: List[float]
    extras: Dict[str, Any] = field(default_factory=dict)

    @property
    def max_relative_deviation(self) -> float:
        return relative_deviation(self.values)

    def rows(self) -> List[Tuple[float, float, str, float]]:
        deviation = self.max_relative_deviation
        return [(t, v, self.mode.value, deviation) for t, v in zip(self.t_values, self.values)]


@dataclass
class ZeroModeIndex:
    """dim ker D₊ − dim ker D₋ counted from singular values."""

    index: int
    kernel_plus: int
    kernel_minus: int
    threshold: float
    ambiguous: bool = False
    cut_gap: float = float("inf")


def relative_deviation(values: List[float]) -> float:
    """
    (max − min) / |mean| over a list of values.

    Falls back to the absolute spread when the mean vanishes, so families that
    are identically zero report a deviation of (numerically) zero.
    """
    if not values:
        return 0.0
    arr = np.asarray(values, dtype=float)
    spread = float(arr.max() - arr.min())
    mean = float(abs(arr.mean()))
    return spread / mean if mean > 1e-12 else spread
