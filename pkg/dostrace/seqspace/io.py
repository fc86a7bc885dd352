"""Reading and writing sequences: one value per line, or a CSV with a ``mu`` column."""

import csv
from pathlib import Path
from typing import List, Union

import numpy as np

from ..errors import ParameterError

PathLike = Union[str, Path]


def read_sequence(path: PathLike) -> np.ndarray:
    """
    Read a sequence of reals.

    Lines starting with ``#`` are ignored. If the first data line contains a
    comma it is treated as a CSV header and the ``mu`` column is read.
    """
    lines = [
        line.strip()
        for line in Path(path).read_text().splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        return np.zeros(0)
    if "," in lines[0]:
        reader = csv.DictReader(lines)
        if not reader.fieldnames or "mu" not in reader.fieldnames:
            raise ParameterError(f"{path}: CSV sequences need a 'mu' column")
        values: List[float] = [float(row["mu"]) for row in reader]
    else:
        values = [float(line) for line in lines]
    return np.asarray(values, dtype=float)


def write_sequence(path: PathLike, values, header: str = "") -> Path:
    """Write one value per line with full precision, optional ``#`` header."""
    target = Path(path)
    with target.open("w") as f:
        if header:
            f.write(f"# {header}\n")
        for v in np.asarray(values, dtype=float):
            f.write(f"{float(v)!r}\n")
    return target


def generate_sequence(spec: str, n: int) -> np.ndarray:
    """
    First ``n`` terms of a named sequence.

    ``harmonic`` is 1/(k+1), ``power:a`` is (k+1)^{-a} and ``geometric:r`` is
    r^k with 0 < r < 1.
    """
    if n < 1:
        raise ParameterError(f"sequence length must be positive, got {n}")
    kind, _, param = spec.partition(":")
    k = np.arange(n, dtype=float)
    try:
        value = float(param) if param else None
    except ValueError as exc:
        raise ParameterError(f"sequence parameter must be a number, got {param!r}") from exc
    if kind == "harmonic":
        return 1.0 / (k + 1.0)
    if kind == "power" and value is not None and value > 0:
        return (k + 1.0) ** (-value)
    if kind == "geometric" and value is not None and 0 < value < 1:
        return value**k
    raise ParameterError(
        f"Unknown sequence: {spec}. Available sequences: harmonic, power:a (a > 0), "
        "geometric:r (0 < r < 1)"
    )
