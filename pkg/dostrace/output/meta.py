"""Run provenance and cell formatting shared by every writer."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict

import numpy as np

from .. import __version__


@dataclass(frozen=True)
class RunMeta:
    """What produced an output file: command, toolkit version and config hash."""

    command: str
    config_hash: str
    version: str = __version__
    config: Dict[str, Any] = field(default_factory=dict, compare=False)

    def comment_line(self) -> str:
        return f"# dostrace {self.version} config={self.config_hash}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "config": self.config,
            "config_hash": self.config_hash,
            "version": self.version,
        }


def format_cell(value: Any) -> str:
    """
    Fixed text form of a table cell.

    Floats use 17 significant digits so they read back exactly and repeated
    runs produce identical bytes.
    """
    if value is None:
        return ""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def to_jsonable(value: Any) -> Any:
    """``default=`` hook for json.dumps."""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (Fraction, Path)):
        return str(value)
    raise TypeError(f"{type(value).__name__} is not JSON serialisable")
