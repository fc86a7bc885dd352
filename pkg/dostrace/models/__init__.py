"""Models shared by the dostrace modules."""

from .enums import (
    Boundary,
    EstimatorMethod,
    HeatMethod,
    Metric,
    ProbeKind,
    ProfileKind,
    Representation,
    SupertraceMode,
    SurrogateKind,
    TailVerdict,
    TraceMode,
)
from .geometry import CellDecomposition, LatticeGeometry, WeightField
from .results import (
    BridgeReport,
    DOSMeasure,
    EstimatorResult,
    FuzzReport,
    InequalityReport,
    MainTheoremReport,
    PropertyCReport,
    PropertyDReport,
    SupertraceResult,
    TailReport,
    TraceEstimate,
    ZeroModeIndex,
)
from .sequences import DixmierEstimate, QuasiNormParams, SingularSequence

__all__ = [
    "Boundary",
    "BridgeReport",
    "CellDecomposition",
    "DixmierEstimate",
    "DOSMeasure",
    "EstimatorMethod",
    "EstimatorResult",
    "FuzzReport",
    "HeatMethod",
    "InequalityReport",
    "LatticeGeometry",
    "MainTheoremReport",
    "Metric",
    "ProbeKind",
    "ProfileKind",
    "PropertyCReport",
    "PropertyDReport",
    "QuasiNormParams",
    "Representation",
    "SingularSequence",
    "SupertraceMode",
    "SupertraceResult",
    "SurrogateKind",
    "TailReport",
    "TailVerdict",
    "TraceEstimate",
    "TraceMode",
    "WeightField",
    "ZeroModeIndex",
]
