import logging

import pytest
from rich.logging import RichHandler

from immersion_tools.config import get_max_enum_dim, get_max_series_degree
from immersion_tools.logging_utils import (
    configure_logging,
    create_enumeration_progress,
    get_package_logger,
    resolve_log_level,
)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in (
        "IMMERSION_TOOLS_MAX_ENUM_DIM",
        "IMMERSION_TOOLS_MAX_SERIES_DEGREE",
    ):
        monkeypatch.delenv(name, raising=False)


def test_defaults() -> None:
    assert get_max_enum_dim() == 6
    assert get_max_series_degree() == 12


def test_enum_dim_can_be_lowered(monkeypatch) -> None:
    monkeypatch.setenv("IMMERSION_TOOLS_MAX_ENUM_DIM", "4")
    assert get_max_enum_dim() == 4


def test_enum_dim_cannot_be_raised(monkeypatch) -> None:
    monkeypatch.setenv("IMMERSION_TOOLS_MAX_ENUM_DIM", "7")
    with pytest.raises(ValueError, match="IMMERSION_TOOLS_MAX_ENUM_DIM"):
        get_max_enum_dim()


def test_blank_value_uses_default(monkeypatch) -> None:
    monkeypatch.setenv("IMMERSION_TOOLS_MAX_SERIES_DEGREE", "  ")
    assert get_max_series_degree() == 12


def test_non_integer_rejected(monkeypatch) -> None:
    monkeypatch.setenv("IMMERSION_TOOLS_MAX_SERIES_DEGREE", "ten")
    with pytest.raises(ValueError):
        get_max_series_degree()


@pytest.mark.parametrize(
    "level,expected", [("debug", logging.DEBUG), ("WARNING", logging.WARNING), (15, 15)]
)
def test_resolve_log_level(level, expected) -> None:
    assert resolve_log_level(level) == expected


def test_resolve_log_level_rejects_unknown() -> None:
    with pytest.raises(ValueError):
        resolve_log_level("LOUD")
    with pytest.raises(TypeError):
        resolve_log_level(1.5)


def test_configure_logging_installs_one_handler() -> None:
    root = logging.getLogger()
    saved = list(root.handlers), root.level
    try:
        configure_logging("INFO")
        configure_logging("DEBUG")
        ours = [h for h in root.handlers if isinstance(h, RichHandler)]
        assert len(ours) == 1
        assert ours[0].level == logging.DEBUG
        assert root.level == logging.DEBUG
    finally:
        root.handlers[:] = saved[0]
        root.setLevel(saved[1])


def test_package_logger_name() -> None:
    assert get_package_logger().name == "immersion_tools"


def test_enumeration_progress_columns() -> None:
    progress = create_enumeration_progress()
    assert len(progress.columns) == 5
