"""Shared CLI helpers: option callbacks, payload loading and output.

Exit codes are uniform across commands: 1 for domain errors, 2 for unreadable
or malformed payloads (typer uses 2 for usage errors as well).
"""

from __future__ import annotations

import json
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated, Any, Iterator, Optional, TypeVar

import typer
from pydantic import BaseModel, ValidationError

from immersion_tools.abelian_groups import parse_group
from immersion_tools.errors import DomainError, PayloadError
from immersion_tools.mcg import klein_bottle_catalog

ModelT = TypeVar("ModelT", bound=BaseModel)

KLEIN_NAMES = [entry.name for entry in klein_bottle_catalog()]

FormFile = Annotated[
    Path, typer.Option("--form", help="H-form JSON file", exists=True, dir_okay=False)
]
JsonFlag = Annotated[bool, typer.Option("--json", help="Emit JSON with sorted keys")]


def load_model(path: Path, model: type[ModelT]) -> ModelT:
    """Read a JSON file into ``model``.

    Raises:
        PayloadError: if the file cannot be read or does not validate.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise PayloadError(f"Cannot read {path}: {exc}") from exc
    try:
        return model.model_validate_json(text)
    except ValidationError as exc:
        details = "; ".join(
            f"{'.'.join(map(str, err['loc'])) or '<root>'}: {err['msg']}" for err in exc.errors()
        )
        raise PayloadError(f"{path} is not a valid {model.__name__}: {details}") from exc


def group_option(value: Optional[str]) -> Optional[str]:
    """Typer option callback: validate invariant factors such as ``"2,4"``."""
    if value is None:
        return None
    try:
        return ",".join(map(str, parse_group(value).factors))
    except DomainError as exc:
        raise typer.BadParameter(str(exc)) from exc


def klein_option(value: Optional[str]) -> Optional[str]:
    """Typer option callback: accept only names from the Klein bottle catalog."""
    if value is None:
        return None
    key = value.strip().replace("∘", "").replace("*", "")
    if key not in KLEIN_NAMES:
        raise typer.BadParameter(f"Expected one of: {', '.join(KLEIN_NAMES)}")
    return key


def emit(payload: Any, as_json: bool, text: str) -> None:
    """Print ``text``, or ``payload`` as JSON with sorted keys."""
    if as_json:
        if isinstance(payload, BaseModel):
            payload = payload.model_dump(mode="json")
        typer.echo(json.dumps(payload, sort_keys=True))
    else:
        typer.echo(text)


@contextmanager
def handle_errors() -> Iterator[None]:
    """Map library errors to exit codes with a message on stderr."""
    try:
        yield
    except PayloadError as exc:
        typer.echo(f"❌ Payload error: {exc}", err=True)
        raise typer.Exit(2)
    except DomainError as exc:
        typer.echo(f"❌ {type(exc).__name__}: {exc}", err=True)
        raise typer.Exit(1)
