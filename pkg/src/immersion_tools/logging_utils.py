"""Shared logging utilities for immersion_tools.

One Rich console is shared by log output and progress bars, so CLI sweeps can
report progress while algorithms log through the standard logging APIs.
"""

from __future__ import annotations

import logging
from functools import lru_cache

from rich.console import Console
from rich.logging import RichHandler
from rich.progress import (
    BarColumn,
    MofNCompleteColumn,
    Progress,
    SpinnerColumn,
    TextColumn,
    TimeRemainingColumn,
)

__all__ = [
    "get_console",
    "configure_logging",
    "get_package_logger",
    "resolve_log_level",
    "create_enumeration_progress",
]

_LEVEL_MAP = {
    "CRITICAL": logging.CRITICAL,
    "ERROR": logging.ERROR,
    "WARNING": logging.WARNING,
    "INFO": logging.INFO,
    "DEBUG": logging.DEBUG,
    "NOTSET": logging.NOTSET,
}

_HANDLER_TAG = "_immersion_tools_handler"


def resolve_log_level(level: int | str) -> int:
    """Convert a logging level (name or numeric) to an integer."""

    if isinstance(level, str):
        try:
            return _LEVEL_MAP[level.upper()]
        except KeyError as exc:
            raise ValueError(f"Invalid logging level string: {level}") from exc
    if isinstance(level, int):
        return level
    raise TypeError(f"Invalid logging level type: {type(level)!r}")


@lru_cache(maxsize=1)
def get_console() -> Console:
    """Return the shared Rich console instance."""

    return Console(stderr=True)


def configure_logging(
    level: int | str = logging.WARNING,
    *,
    rich_tracebacks: bool = True,
    show_path: bool = False,
) -> None:
    """Configure logging for immersion_tools using Rich.

    Attaches one tagged RichHandler to the root logger. Calling it again only
    updates the level of the existing handler.

    Args:
        level: Logging level (name or numeric). Applied to both root logger and handler.
        rich_tracebacks: Enable rich exception formatting.
        show_path: Show file paths in log output.
    """

    root_logger = logging.getLogger()
    numeric_level = resolve_log_level(level)

    for handler in root_logger.handlers:
        if isinstance(handler, RichHandler) and getattr(handler, _HANDLER_TAG, False):
            root_logger.setLevel(numeric_level)
            handler.setLevel(numeric_level)
            return

    # other packages may have attached plain handlers; they would duplicate output
    for handler in [h for h in root_logger.handlers if not isinstance(h, RichHandler)]:
        root_logger.removeHandler(handler)

    rich_handler = RichHandler(
        console=get_console(),
        rich_tracebacks=rich_tracebacks,
        markup=True,
        show_path=show_path,
    )
    rich_handler.setLevel(numeric_level)
    rich_handler.setFormatter(logging.Formatter("%(message)s"))
    setattr(rich_handler, _HANDLER_TAG, True)

    root_logger.addHandler(rich_handler)
    root_logger.setLevel(numeric_level)


@lru_cache(maxsize=1)
def get_package_logger() -> logging.Logger:
    """Get the top of the immersion_tools.* logger hierarchy.

    Example:
        >>> get_package_logger().setLevel(logging.DEBUG)  # trace decompositions
    """
    return logging.getLogger("immersion_tools")


def create_enumeration_progress(console: Console | None = None) -> Progress:
    """Progress bar for exhaustive sweeps over group elements.

    Example:
        >>> with create_enumeration_progress() as progress:
        ...     task_id = progress.add_task("Verifying", total=len(elements))
        ...     for m in elements:
        ...         progress.advance(task_id)
    """
    return Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        TimeRemainingColumn(),
        console=console or get_console(),
    )
