"""Pytest configuration and fixtures."""

import pytest
from click.testing import CliRunner

from dostrace.cli import cli


@pytest.fixture(autouse=True)
def output_dir(tmp_path, monkeypatch):
    """Every run writes under a fresh DOSTRACE_OUT."""
    out = tmp_path / "out"
    monkeypatch.setenv("DOSTRACE_OUT", str(out))
    monkeypatch.delenv("DOSTRACE_LOG_LEVEL", raising=False)
    return out


@pytest.fixture
def invoke():
    """Run the CLI in-process and return the click Result."""
    runner = CliRunner()

    def run(*args):
        return runner.invoke(cli, [str(a) for a in args])

    return run


@pytest.fixture
def small_chain():
    """Geometry flag of a 256-site periodic chain."""
    return "d=1,N=256,periodic"
