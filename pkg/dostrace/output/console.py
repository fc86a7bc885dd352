"""Console output using the Rich library."""

from typing import Any, Iterable, Optional, Sequence

from rich.console import Console
from rich.table import Table

from ..models.results import EstimatorResult
from .meta import RunMeta, format_cell


def short_cell(value: Any) -> str:
    """Six significant digits for floats, :func:`format_cell` otherwise."""
    if isinstance(value, float):
        return f"{value:.6g}"
    return format_cell(value)


def estimator_summary(result: EstimatorResult) -> str:
    """One line per estimator, e.g. ``ball-average t=1: 0.308513 ± 0.0002 (converged)``."""
    line = f"{result.method.value}"
    if result.t is not None:
        line += f" t={result.t:g}"
    line += f": {result.value:.6g}"
    if result.std_error:
        line += f" ± {result.std_error:.2g}"
    return line + (" (converged)" if result.converged else " (not converged)")


class ConsoleOutput:
    """Rich tables plus one-line summaries."""

    def __init__(self, console: Optional[Console] = None):
        self.console = console or Console()

    def render_table(
        self,
        title: str,
        columns: Sequence[str],
        rows: Iterable[Sequence[Any]],
        meta: Optional[RunMeta] = None,
    ) -> None:
        """Render a result table; the first column is styled as a key."""
        table = Table(title=title, caption=meta.comment_line()[2:] if meta else None)
        for i, column in enumerate(columns):
            if i == 0:
                table.add_column(column, style="cyan", no_wrap=True)
            else:
                table.add_column(column, style="green", justify="right")
        for row in rows:
            table.add_row(*[short_cell(value) for value in row])
        self.console.print(table)

    def render_summary(self, lines: Iterable[str]) -> None:
        for line in lines:
            style = "yellow" if "not converged" in line or "FAIL" in line else "bold"
            self.console.print(line, style=style, highlight=False)
