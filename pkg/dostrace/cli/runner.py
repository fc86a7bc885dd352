"""One command invocation: validated config, output directory and writers."""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

from ..models.results import DOSMeasure
from ..output import (
    ConsoleOutput,
    CSVOutput,
    HTMLOutput,
    HTMLSection,
    JSONOutput,
    RunMeta,
    TextOutput,
)
from .config import ExperimentConfig

logger = logging.getLogger(__name__)

RESULTS_FILE = "results.csv"
REPORT_FILE = "report.json"
HISTOGRAM_FILE = "histogram.csv"


@dataclass
class ExperimentRun:
    """Writes results.csv and report.json and renders the tables of one command."""

    command: str
    config: ExperimentConfig
    out_dir: Path
    text: bool = False
    html: Optional[str] = None
    sections: List[HTMLSection] = field(default_factory=list)
    meta: RunMeta = field(init=False)

    def __post_init__(self):
        self.meta = RunMeta(
            command=self.command,
            config_hash=self.config.config_hash(),
            config=self.config.model_dump(mode="json"),
        )

    def write_results(self, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> Path:
        self.sections.append(HTMLSection.build("Results", columns, rows))
        return CSVOutput(self.meta).write_rows(self.out_dir / RESULTS_FILE, columns, rows)

    def write_report(self, payload: Dict[str, Any]) -> Path:
        return JSONOutput(self.meta).write(self.out_dir / REPORT_FILE, payload)

    def write_histogram(self, measure: DOSMeasure) -> Path:
        self.sections.append(
            HTMLSection.build("DOS histogram", ["bin_lo", "bin_hi", "mass"], measure.rows())
        )
        return CSVOutput(self.meta).write_histogram(self.out_dir / HISTOGRAM_FILE, measure)

    def add_section(self, title: str, columns: Sequence[str], rows: Sequence[Sequence[Any]]):
        """Extra table for the HTML report only."""
        self.sections.append(HTMLSection.build(title, columns, rows))

    def show(
        self,
        title: str,
        columns: Sequence[str],
        rows: Iterable[Sequence[Any]],
        summary: Iterable[str] = (),
    ) -> None:
        if self.text:
            renderer = TextOutput()
            renderer.render_table(title, columns, rows)
            renderer.render_summary(summary)
        else:
            console = ConsoleOutput()
            console.render_table(title, columns, rows, self.meta)
            console.render_summary(summary)

    def finish(self, title: str) -> None:
        """Write the HTML report when ``--html`` was given."""
        if self.html:
            HTMLOutput(self.meta).write(self.html, title, self.sections)
        logger.info("Outputs of %s written to %s", self.command, self.out_dir)
