"""Volume-growth profiles r ↦ |B(x₀,r)| with their surface and surface derivative.

Profiles are evaluated in the log domain so exponential growth stays finite at
desk-scale radii (e^{2r} at r = 1024 overflows a double). Negative radii are
clamped: V(r) = V(0), S(r) = 0 and S'(r)/S(r) = 0 for r < 0.
"""

import csv
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Mapping, Union

import numpy as np

from ..errors import GeometryError, ParameterError
from ..models.enums import ProfileKind, Representation

ArrayLike = Union[float, np.ndarray]


def _evaluate(r: ArrayLike, fn, negative_value: float) -> ArrayLike:
    arr = np.asarray(r, dtype=float)
    out = np.full(arr.shape, negative_value, dtype=float)
    inside = arr >= 0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        out[inside] = fn(arr[inside])
    return float(out) if np.ndim(r) == 0 else out


class GrowthProfile(ABC):
    """Base class for volume-growth profiles."""

    kind: ProfileKind
    representation = Representation.CLOSED_FORM

    @abstractmethod
    def _log_volume(self, r: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def _log_surface(self, r: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def _surface_log_derivative(self, r: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def describe(self) -> str:
        pass

    def log_volume(self, r: ArrayLike) -> ArrayLike:
        """log V(r), with V(r) = V(0) for r < 0."""
        with np.errstate(divide="ignore", invalid="ignore"):
            v0 = float(self._log_volume(np.zeros(1))[0])
        return _evaluate(r, self._log_volume, v0)

    def log_surface(self, r: ArrayLike) -> ArrayLike:
        return _evaluate(r, self._log_surface, -np.inf)

    def surface_log_derivative(self, r: ArrayLike) -> ArrayLike:
        """S'(r)/S(r)."""
        return _evaluate(r, self._surface_log_derivative, 0.0)

    def volume(self, r: ArrayLike) -> ArrayLike:
        return np.exp(self.log_volume(r))

    def surface(self, r: ArrayLike) -> ArrayLike:
        return np.exp(self.log_surface(r))

    def surface_derivative(self, r: ArrayLike) -> ArrayLike:
        return self.surface(r) * self.surface_log_derivative(r)

    def log_one_plus_volume(self, r: ArrayLike) -> ArrayLike:
        """log(1 + V(r))."""
        return np.logaddexp(0.0, self.log_volume(r))


class PowerProfile(GrowthProfile):
    """Euclidean-type growth V(r) = c r^d."""

    kind = ProfileKind.POWER

    def __init__(self, d: float, c: float = 1.0):
        if d < 0 or c <= 0:
            raise ParameterError(f"power profile needs d >= 0 and c > 0, got d={d}, c={c}")
        self.d = float(d)
        self.c = float(c)

    def _log_volume(self, r):
        if self.d == 0:
            return np.full(r.shape, np.log(self.c))
        return np.log(self.c) + self.d * np.log(r)

    def _log_surface(self, r):
        if self.d == 0:
            return np.full(r.shape, -np.inf)
        if self.d == 1:
            return np.full(r.shape, np.log(self.c))
        return np.log(self.c * self.d) + (self.d - 1) * np.log(r)

    def _surface_log_derivative(self, r):
        if self.d in (0, 1):
            return np.zeros(r.shape)
        return (self.d - 1) / r

    def describe(self) -> str:
        return f"power(d={self.d:g}, c={self.c:g})"


class StretchedExpProfile(GrowthProfile):
    """Subexponential growth V(r) = c exp(r^α)."""

    kind = ProfileKind.STRETCHED_EXP

    def __init__(self, alpha: float, c: float = 1.0):
        if not 0 < alpha < 1 or c <= 0:
            raise ParameterError(f"stretched-exp needs 0 < alpha < 1 and c > 0, got {alpha}, {c}")
        self.alpha = float(alpha)
        self.c = float(c)

    def _log_volume(self, r):
        return np.log(self.c) + r**self.alpha

    def _log_surface(self, r):
        a = self.alpha
        return np.log(self.c * a) + (a - 1) * np.log(r) + r**a

    def _surface_log_derivative(self, r):
        a = self.alpha
        return (a - 1) / r + a * r ** (a - 1)

    def describe(self) -> str:
        return f"stretched-exp(alpha={self.alpha:g}, c={self.c:g})"


class ExpProfile(GrowthProfile):
    """Hyperbolic-type growth V(r) = c e^{rate·r}."""

    kind = ProfileKind.EXP

    def __init__(self, rate: float, c: float = 1.0):
        if rate <= 0 or c <= 0:
            raise ParameterError(f"exp profile needs rate > 0 and c > 0, got {rate}, {c}")
        self.rate = float(rate)
        self.c = float(c)

    def _log_volume(self, r):
        return np.log(self.c) + self.rate * r

    def _log_surface(self, r):
        return np.log(self.c * self.rate) + self.rate * r

    def _surface_log_derivative(self, r):
        return np.full(r.shape, self.rate)

    def describe(self) -> str:
        return f"exp(rate={self.rate:g}, c={self.c:g})"


class TabulatedProfile(GrowthProfile):
    """Profile sampled on a grid r_0 < r_1 < ..., linearly interpolated."""

    kind = ProfileKind.TABLE
    representation = Representation.TABULATED

    def __init__(self, r, volume, surface, surface_derivative, tol: float = 1e-2, name: str = ""):
        self.r = np.asarray(r, dtype=float)
        self.V = np.asarray(volume, dtype=float)
        self.S = np.asarray(surface, dtype=float)
        self.Sprime = np.asarray(surface_derivative, dtype=float)
        self.name = name
        if not (self.r.size == self.V.size == self.S.size == self.Sprime.size) or self.r.size < 2:
            raise GeometryError("table profile needs equal-length columns with at least two rows")
        if np.any(np.diff(self.r) <= 0):
            raise GeometryError("table radii must be strictly increasing")
        if np.any(self.V < 0) or np.any(self.S < 0):
            raise GeometryError("table volumes and surfaces must be non-negative")
        self.step = float(np.min(np.diff(self.r)))
        self._check_consistency(tol)

    def _check_consistency(self, tol: float) -> None:
        # V(r+h) - V(r) must match the trapezoid integral of S over [r, r+h]
        increments = np.diff(self.V)
        integrals = 0.5 * (self.S[1:] + self.S[:-1]) * np.diff(self.r)
        bad = np.abs(increments - integrals) > tol * np.maximum(self.V[1:], 1e-300)
        if np.any(bad):
            first = int(np.argmax(bad))
            raise GeometryError(
                f"table profile is inconsistent between r={self.r[first]:g} and "
                f"r={self.r[first + 1]:g}: ΔV={increments[first]:g}, ∫S={integrals[first]:g}"
            )

    @classmethod
    def from_csv(cls, path: Union[str, Path], tol: float = 1e-2) -> "TabulatedProfile":
        """Read columns r, V, S, Sprime."""
        with Path(path).open(newline="") as f:
            rows = [row for row in csv.DictReader(line for line in f if not line.startswith("#"))]
        missing = {"r", "V", "S", "Sprime"} - set(rows[0].keys() if rows else [])
        if missing:
            raise GeometryError(f"{path}: missing columns {sorted(missing)}")
        cols = {key: [float(row[key]) for row in rows] for key in ("r", "V", "S", "Sprime")}
        return cls(cols["r"], cols["V"], cols["S"], cols["Sprime"], tol=tol, name=str(path))

    def _interp(self, r, values):
        return np.interp(r, self.r, values)

    def _log_volume(self, r):
        return np.log(self._interp(r, self.V))

    def _log_surface(self, r):
        return np.log(self._interp(r, self.S))

    def _surface_log_derivative(self, r):
        return self._interp(r, self.Sprime) / self._interp(r, self.S)

    def describe(self) -> str:
        return f"table({self.name or self.r.size})"


def profile_from_config(mapping: Mapping[str, Any]) -> GrowthProfile:
    """
    Build a profile from ``{kind: ..., **params}``.

    Args:
        mapping: e.g. ``{"kind": "power", "d": 3, "c": 1}`` or ``{"kind": "table", "path": ...}``

    Returns:
        The growth profile
    """
    from ..registry import ProfileRegistry

    params = dict(mapping)
    kind = params.pop("kind")
    return ProfileRegistry.create(kind, **params)
