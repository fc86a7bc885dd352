"""Plain-text tables rendered with tabulate."""

from typing import Any, Iterable, Sequence

import click
from tabulate import tabulate

from .console import short_cell


class TextOutput:
    """``--format text``: tabulate grids and bare summary lines on stdout."""

    def __init__(self, table_format: str = "simple"):
        self.table_format = table_format

    def format_table(
        self, title: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]
    ) -> str:
        body = tabulate(
            [[short_cell(value) for value in row] for row in rows],
            headers=list(columns),
            tablefmt=self.table_format,
            disable_numparse=True,
        )
        return f"{title}\n{body}"

    def render_table(
        self, title: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]
    ) -> None:
        click.echo(self.format_table(title, columns, rows))

    def render_summary(self, lines: Iterable[str]) -> None:
        for line in lines:
            click.echo(line)
