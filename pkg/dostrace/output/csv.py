"""CSV writers: results tables and DOS histograms."""

import csv
import logging
from pathlib import Path
from typing import Any, Iterable, Sequence, Union

from ..models.results import DOSMeasure
from .meta import RunMeta, format_cell

logger = logging.getLogger(__name__)


class CSVOutput:
    """CSV writer that stamps every file with the run's provenance line."""

    def __init__(self, meta: RunMeta):
        self.meta = meta

    def write_rows(
        self,
        path: Union[str, Path],
        columns: Sequence[str],
        rows: Iterable[Sequence[Any]],
    ) -> Path:
        """
        Write a header comment, a column row and one line per row.

        Args:
            path: Target file
            columns: Column names
            rows: Row values, formatted with :func:`format_cell`

        Returns:
            The written path
        """
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", newline="", encoding="utf-8") as csvfile:
            csvfile.write(self.meta.comment_line() + "\n")
            writer = csv.writer(csvfile, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([format_cell(value) for value in row])
        logger.info("CSV written to %s", target)
        return target

    def write_histogram(self, path: Union[str, Path], measure: DOSMeasure) -> Path:
        """Histogram masses as ``bin_lo, bin_hi, mass`` rows."""
        return self.write_rows(path, ["bin_lo", "bin_hi", "mass"], measure.rows())
