"""Centralized configuration for immersion_tools.

Size guards can be tuned through environment variables.
Each getter reads the environment on every call so tests can override values
with ``monkeypatch.setenv``.
"""

import os

#: Hard ceiling for exhaustive O(E, g) enumeration.
ENUM_DIM_CEILING = 6

#: Hard ceiling for the degree accepted by M_n structure computations.
SERIES_DEGREE_CEILING = 12


def _read_int(name: str, default: int, low: int, high: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from exc
    if not low <= value <= high:
        raise ValueError(f"{name} must lie in [{low}, {high}], got {value}")
    return value


def get_max_enum_dim() -> int:
    """Get the dimension guard for exhaustive group enumeration.

    Configured via IMMERSION_TOOLS_MAX_ENUM_DIM. Defaults to 6, and may be
    lowered but never raised above that.

    Returns:
        Largest dimension accepted by ``enumerate_group``

    Example:
        >>> os.environ['IMMERSION_TOOLS_MAX_ENUM_DIM'] = '4'
        >>> get_max_enum_dim()
        4
    """
    return _read_int("IMMERSION_TOOLS_MAX_ENUM_DIM", ENUM_DIM_CEILING, 1, ENUM_DIM_CEILING)


def get_max_series_degree() -> int:
    """Get the degree guard for M_n structure computations.

    Configured via IMMERSION_TOOLS_MAX_SERIES_DEGREE, default 12.
    """
    return _read_int(
        "IMMERSION_TOOLS_MAX_SERIES_DEGREE", SERIES_DEGREE_CEILING, 0, SERIES_DEGREE_CEILING
    )

