"""Logging setup: one rich handler on the ``dostrace`` logger."""

import logging
import os
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

LOGGER_NAME = "dostrace"
LEVEL_ENV = "DOSTRACE_LOG_LEVEL"


def default_level() -> int:
    """Level from DOSTRACE_LOG_LEVEL, WARNING when unset or unknown."""
    name = os.environ.get(LEVEL_ENV, "WARNING").upper()
    level = logging.getLevelName(name)
    return level if isinstance(level, int) else logging.WARNING


def configure_logging(
    level: Optional[int] = None, console: Optional[Console] = None
) -> logging.Logger:
    """
    Install a RichHandler on the package logger.

    Calling this again only updates the level, so the CLI and tests can both
    call it without stacking handlers.

    Args:
        level: Logging level; defaults to :func:`default_level`
        console: Console the handler writes to (stderr by default)

    Returns:
        The configured package logger
    """
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(default_level() if level is None else level)
    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        handler = RichHandler(
            console=console or Console(stderr=True),
            show_path=False,
            rich_tracebacks=False,
        )
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        logger.addHandler(handler)
    return logger
