"""Output writers: rich console, tabulate text, CSV, JSON and HTML."""

from .console import ConsoleOutput, estimator_summary
from .csv import CSVOutput
from .html import HTMLOutput, HTMLSection
from .json import JSONOutput
from .meta import RunMeta, format_cell
from .text import TextOutput

__all__ = [
    "ConsoleOutput",
    "CSVOutput",
    "HTMLOutput",
    "HTMLSection",
    "JSONOutput",
    "RunMeta",
    "TextOutput",
    "estimator_summary",
    "format_cell",
]
