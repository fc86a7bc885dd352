"""HTML report of estimator tables and their approximants."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Sequence, Union

from jinja2 import Template

from .console import short_cell
from .meta import RunMeta

logger = logging.getLogger(__name__)

REPORT_TEMPLATE = """<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <title>{{ title }}</title>
    <style>
        body {
            font-family: 'Segoe UI', Tahoma, Geneva, Verdana, sans-serif;
            margin: 0;
            padding: 20px;
            background-color: #f5f5f5;
        }
        .container {
            max-width: 1100px;
            margin: 0 auto;
            background: white;
            border-radius: 8px;
            box-shadow: 0 2px 10px rgba(0,0,0,0.1);
            padding: 30px;
        }
        h1 { font-weight: 300; margin-top: 0; }
        .meta { color: #6c757d; font-family: 'Courier New', monospace; }
        table { width: 100%; border-collapse: collapse; margin: 20px 0; font-size: 14px; }
        th {
            background: #f8f9fa;
            padding: 10px;
            text-align: left;
            border-bottom: 2px solid #dee2e6;
        }
        td {
            padding: 10px;
            border-bottom: 1px solid #dee2e6;
            font-family: 'Courier New', monospace;
        }
        tr:hover { background-color: #f8f9fa; }
    </style>
</head>
<body>
<div class="container">
    <h1>{{ title }}</h1>
    <p class="meta">
        dostrace {{ meta.version }} &middot; {{ meta.command }}
        &middot; config={{ meta.config_hash }}
    </p>
    {% for section in sections %}
    <h2>{{ section.title }}</h2>
    <table>
        <thead><tr>
        {% for column in section.columns %}<th>{{ column }}</th>{% endfor %}
        </tr></thead>
        <tbody>
        {% for row in section.rows %}
            <tr>{% for cell in row %}<td>{{ cell }}</td>{% endfor %}</tr>
        {% endfor %}
        </tbody>
    </table>
    {% endfor %}
</div>
</body>
</html>
"""


@dataclass
class HTMLSection:
    """One titled table of the report."""

    title: str
    columns: Sequence[str]
    rows: List[List[str]]

    @classmethod
    def build(cls, title: str, columns: Sequence[str], rows: Sequence[Sequence[Any]]):
        return cls(title, list(columns), [[short_cell(v) for v in row] for row in rows])


class HTMLOutput:
    """Single-page HTML report rendered from an inline jinja2 template."""

    def __init__(self, meta: RunMeta):
        self.meta = meta
        self.template = Template(REPORT_TEMPLATE, autoescape=True)

    def render(self, title: str, sections: Sequence[HTMLSection]) -> str:
        return self.template.render(title=title, meta=self.meta, sections=sections)

    def write(self, path: Union[str, Path], title: str, sections: Sequence[HTMLSection]) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(self.render(title, sections), encoding="utf-8")
        logger.info("HTML report written to %s", target)
        return target
