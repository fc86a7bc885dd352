"""Exception hierarchy shared by every dostrace module.

Each error carries the process exit code the CLI should use when it escapes a
command. Numerical validation problems exit with 2, instances that are too
large for an exact path exit with 3.
"""

from typing import Iterable, Optional


class DosTraceError(Exception):
    """Base class of all toolkit errors."""

    exit_code = 1


class ParameterError(DosTraceError, ValueError):
    """A numeric parameter is outside its documented range."""

    exit_code = 2


class GeometryError(DosTraceError, ValueError):
    """A geometry or growth profile cannot support the requested quantity."""

    exit_code = 2


class GaugeError(GeometryError):
    """The magnetic gauge is not periodic on the requested torus."""


class InsufficientDataError(DosTraceError, ValueError):
    """Too few terms to estimate a limit."""

    exit_code = 2


class CapabilityError(DosTraceError):
    """The instance is too large for an exact (dense) computation."""

    exit_code = 3

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(
            f"{what} needs an exact path but the instance has {size} sites "
            f"(limit {limit}); rerun on a smaller instance or raise run.n_exact"
        )
        self.size = size
        self.limit = limit


class NotGradedError(DosTraceError, TypeError):
    """An index computation received an operator that is not a graded pair."""

    exit_code = 2


class ConfigError(DosTraceError):
    """The experiment configuration does not validate."""

    exit_code = 2

    def __init__(self, message: str, keys: Optional[Iterable[str]] = None):
        self.keys = list(keys or [])
        if self.keys:
            message = f"{message} (offending keys: {', '.join(self.keys)})"
        super().__init__(message)
