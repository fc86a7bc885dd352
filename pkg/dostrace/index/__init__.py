"""Weighted supertraces, their t-independence and the zero-mode index of graded pairs."""

from .supertrace import (
    raw_supertrace,
    supertrace_diagonal,
    supertrace_weighted,
    t_independence_scan,
    zero_mode_index,
)

__all__ = [
    "raw_supertrace",
    "supertrace_diagonal",
    "supertrace_weighted",
    "t_independence_scan",
    "zero_mode_index",
]
