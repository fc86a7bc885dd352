"""Experiment configuration: TOML document, flat dotted overrides and a pydantic schema."""

import hashlib
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..configs.defaults import DEFAULT_K, DEFAULT_RMAX, MIN_PROBES, N_EXACT
from ..configs.geometries import GEOMETRY_PRESETS
from ..configs.profiles import PROFILE_PRESETS
from ..dos.estimators import DEFAULT_S_GRID
from ..errors import ConfigError
from ..growth.profiles import GrowthProfile, profile_from_config
from ..models.enums import (
    Boundary,
    EstimatorMethod,
    Metric,
    ProbeKind,
    ProfileKind,
    SupertraceMode,
    TraceMode,
)
from ..models.geometry import LatticeGeometry
from ..operators.traces import ProbeEnsemble
from ..strategies import (
    ConstantPotential,
    IIDUniformPotential,
    PeriodicTablePotential,
    PotentialStrategy,
)
from ..verify.settings import VerifySettings

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

OUT_ENV = "DOSTRACE_OUT"


class Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True, ser_json_inf_nan="constants")


class GeometrySection(Section):
    """A box of Z^d: either ``dim`` and ``n`` (sites per axis) or explicit ``extents``."""

    dim: int = Field(1, ge=1, le=4)
    n: int = Field(4096, ge=1)
    extents: Optional[List[int]] = None
    metric: Metric = Metric.EUCLIDEAN
    boundary: Boundary = Boundary.PERIODIC

    def build(self) -> LatticeGeometry:
        extents = tuple(self.extents) if self.extents else (self.n,) * self.dim
        return LatticeGeometry(extents, self.metric, self.boundary)


class ProfileSection(Section):
    """A profile family with its parameters, or a named ``preset``."""

    preset: Optional[str] = None
    kind: ProfileKind = ProfileKind.POWER
    d: float = 3.0
    alpha: float = 0.4
    rate: float = 1.0
    c: float = 1.0
    path: Optional[str] = None
    K: int = Field(DEFAULT_K, ge=16)
    rmax: float = DEFAULT_RMAX

    def params(self) -> Dict[str, Any]:
        """Keyword parameters for the profile registry."""
        if self.kind == ProfileKind.POWER:
            return {"kind": self.kind.value, "d": self.d, "c": self.c}
        if self.kind == ProfileKind.STRETCHED_EXP:
            return {"kind": self.kind.value, "alpha": self.alpha, "c": self.c}
        if self.kind == ProfileKind.EXP:
            return {"kind": self.kind.value, "rate": self.rate, "c": self.c}
        if not self.path:
            raise ConfigError("a table profile needs a CSV path", ["profile.path"])
        return {"kind": self.kind.value, "path": self.path}

    @field_validator("preset")
    @classmethod
    def _known_preset(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value not in PROFILE_PRESETS:
            raise ValueError(f"unknown preset {value!r}; choose from {sorted(PROFILE_PRESETS)}")
        return value

    def build(self) -> GrowthProfile:
        if self.preset:
            return PROFILE_PRESETS[self.preset]
        return profile_from_config(self.params())


class PotentialSection(Section):
    """On-site potential; ``none`` gives the bare lattice Laplacian."""

    kind: Literal["none", "constant", "iid-uniform", "periodic"] = "none"
    c: float = 0.0
    a: float = 0.0
    b: float = 1.0
    seed: int = 0
    table: List[float] = Field(default_factory=list)

    def strategy(self) -> Optional[PotentialStrategy]:
        if self.kind == "none":
            return None
        if self.kind == "constant":
            return ConstantPotential(self.c)
        if self.kind == "iid-uniform":
            return IIDUniformPotential(self.a, self.b, self.seed)
        if not self.table:
            raise ConfigError("a periodic potential needs a table", ["potential.table"])
        return PeriodicTablePotential(self.table)


class DosSection(Section):
    t: List[float] = Field(default_factory=lambda: [1.0])
    estimators: List[str] = Field(default_factory=lambda: ["all"])
    radii: Optional[List[float]] = None
    s_grid: List[float] = Field(default_factory=lambda: list(DEFAULT_S_GRID))
    surrogate: str = "log-extrapolation:1"
    mode: TraceMode = TraceMode.EXACT
    probes: int = Field(32, ge=MIN_PROBES)
    probe_seed: int = 0
    probe_kind: ProbeKind = ProbeKind.RADEMACHER
    histogram: bool = False
    moments: int = Field(256, ge=64)
    bins: int = Field(100, ge=1)

    @field_validator("t")
    @classmethod
    def _non_negative_times(cls, value: List[float]) -> List[float]:
        if not value or any(t < 0 for t in value):
            raise ValueError("heat times must be a non-empty list of non-negative numbers")
        return value

    @field_validator("estimators")
    @classmethod
    def _known_estimators(cls, value: List[str]) -> List[str]:
        known = {m.value for m in EstimatorMethod}
        unknown = [name for name in value if name != "all" and name not in known]
        if unknown:
            raise ValueError(f"unknown estimators {unknown}; choose from {sorted(known)} or all")
        return value

    def methods(self) -> List[EstimatorMethod]:
        if "all" in self.estimators:
            return list(EstimatorMethod)
        return [EstimatorMethod(name) for name in self.estimators]

    def probe_ensemble(self) -> Optional[ProbeEnsemble]:
        if self.mode == TraceMode.EXACT:
            return None
        return ProbeEnsemble(self.probes, self.probe_seed, self.probe_kind)


class SeqSection(Section):
    """A sequence read from ``path`` or generated (``harmonic``, ``power:a``, ``geometric:r``)."""

    path: Optional[str] = None
    generator: str = "harmonic"
    n: int = Field(1_000_000, ge=1)
    p: float = 1.0
    q: float = math.inf
    surrogate: str = "log-extrapolation:1"


class VerifySection(Section):
    n: Optional[int] = None
    t: float = 1.0
    p_spec: str = "free-laplacian"
    a_spec: str = "identity"
    b_spec: str = "harmonic"
    s_grid: List[float] = Field(default_factory=lambda: list(DEFAULT_S_GRID))
    eps_grid: Optional[List[float]] = None
    trials: int = Field(1000, ge=1)
    n_max: int = Field(64, ge=2)
    r: float = 2.0
    q: float = 1.0
    seed: int = 1
    nodes: int = Field(32, ge=2)
    surrogate: str = "log-extrapolation:1"

    def settings(self, workers: Optional[int]) -> VerifySettings:
        data = self.model_dump()
        data["s_grid"] = tuple(data["s_grid"])
        return VerifySettings(**data, workers=workers)


class IndexSection(Section):
    lx: int = Field(6, ge=1)
    ly: int = Field(6, ge=1)
    flux: str = "1/6"
    t: List[float] = Field(default_factory=lambda: [0.5, 1.0, 2.0])
    mode: SupertraceMode = SupertraceMode.BALL_AVERAGE
    surrogate: str = "log-extrapolation:1"

    @field_validator("flux")
    @classmethod
    def _fraction(cls, value: str) -> str:
        try:
            Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"flux must be a fraction like 1/6, got {value!r}") from exc
        return value


class RunSection(Section):
    out_dir: str = "results"
    workers: Optional[int] = Field(None, ge=1)
    n_exact: int = Field(N_EXACT, ge=1)


class ExperimentConfig(Section):
    """One experiment document."""

    geometry: GeometrySection = Field(default_factory=GeometrySection)
    profile: ProfileSection = Field(default_factory=ProfileSection)
    potential: PotentialSection = Field(default_factory=PotentialSection)
    dos: DosSection = Field(default_factory=DosSection)
    seq: SeqSection = Field(default_factory=SeqSection)
    verify: VerifySection = Field(default_factory=VerifySection)
    index: IndexSection = Field(default_factory=IndexSection)
    run: RunSection = Field(default_factory=RunSection)

    @property
    def workers(self) -> int:
        return self.run.workers or os.cpu_count() or 1

    def config_hash(self) -> str:
        """First 16 hex digits of the SHA-256 of the canonical JSON form."""
        canonical = json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]

    def out_dir(self, override: Optional[str] = None) -> Path:
        """``--out`` beats DOSTRACE_OUT, which beats ``run.out_dir``."""
        return Path(override or os.environ.get(OUT_ENV) or self.run.out_dir)


def parse_literal(raw: str) -> Any:
    """A TOML literal (``1``, ``[0.5, 1]``, ``"x"``, ``true``), else the raw string."""
    try:
        return tomllib.loads(f"value = {raw}")["value"]
    except tomllib.TOMLDecodeError:
        return raw


def parse_assignment(text: str) -> Dict[str, Any]:
    """``key=value`` from ``--set`` into a one-entry flat map."""
    key, sep, raw = text.partition("=")
    if not sep or not key.strip():
        raise ConfigError(f"--set expects key=value, got {text!r}")
    return {key.strip(): parse_literal(raw.strip())}


GEOMETRY_KEYS = {"d": "dim", "dim": "dim", "n": "n", "metric": "metric", "boundary": "boundary"}


def parse_geometry(text: str) -> Dict[str, Any]:
    """
    Flat geometry keys from a compact string.

    ``d=1,N=4096,periodic`` gives ``geometry.dim``, ``geometry.n`` and
    ``geometry.boundary``; ``extents=64x32`` and ``metric=l1`` are accepted too.
    A preset name such as ``square-64`` expands to its extents, metric and
    boundary; a later metric or boundary token replaces the preset's.
    """
    flat: Dict[str, Any] = {}
    for token in filter(None, (part.strip() for part in text.split(","))):
        key, sep, value = token.partition("=")
        key = key.strip().lower()
        if not sep:
            if key in GEOMETRY_PRESETS:
                preset = GEOMETRY_PRESETS[key]
                flat["geometry.extents"] = list(preset.extents)
                flat["geometry.metric"] = preset.metric.value
                flat["geometry.boundary"] = preset.boundary.value
                continue
            if key in {b.value for b in Boundary}:
                flat["geometry.boundary"] = key
                continue
            raise ConfigError(f"unrecognised geometry token {token!r}", ["geometry"])
        if key == "extents":
            try:
                flat["geometry.extents"] = [int(e) for e in value.lower().split("x")]
            except ValueError as exc:
                raise ConfigError(
                    f"extents must look like 64x64, got {value!r}", ["geometry.extents"]
                ) from exc
            continue
        if key not in GEOMETRY_KEYS:
            raise ConfigError(f"unrecognised geometry key {key!r}", [f"geometry.{key}"])
        flat[f"geometry.{GEOMETRY_KEYS[key]}"] = parse_literal(value.strip())
    return flat


def flatten(mapping: Mapping[str, Any], prefix: str = "") -> Dict[str, Any]:
    """Nested tables to dotted keys; lists stay values."""
    flat: Dict[str, Any] = {}
    for key, value in mapping.items():
        dotted = f"{prefix}{key}"
        if isinstance(value, Mapping):
            flat.update(flatten(value, f"{dotted}."))
        else:
            flat[dotted] = value
    return flat


def unflatten(flat: Mapping[str, Any]) -> Dict[str, Any]:
    nested: Dict[str, Any] = {}
    for dotted, value in flat.items():
        *parents, leaf = dotted.split(".")
        node = nested
        for part in parents:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigError(f"{part} is a value, not a section", [dotted])
            node = child
        node[leaf] = value
    return nested


def read_document(path: Union[str, Path]) -> Dict[str, Any]:
    """Read a TOML experiment document into flat dotted keys."""
    try:
        with open(path, "rb") as f:
            return flatten(tomllib.load(f))
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def load_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> ExperimentConfig:
    """
    Validate an experiment document after applying flat overrides.

    Args:
        path: TOML file, or None for the defaults
        overrides: Dotted keys set by CLI flags or ``--set``

    Returns:
        The validated configuration

    Raises:
        ConfigError: Naming every offending dotted key
    """
    flat = read_document(path) if path else {}
    flat.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return ExperimentConfig.model_validate(unflatten(flat))
    except ValidationError as exc:
        keys = [".".join(str(part) for part in error["loc"]) for error in exc.errors()]
        details = "; ".join(
            f"{key}: {error['msg']}" for key, error in zip(keys, exc.errors())
        )
        raise ConfigError(f"invalid configuration: {details}", keys) from exc
