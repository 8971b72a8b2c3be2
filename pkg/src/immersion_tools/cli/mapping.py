"""Mapping-class CLI commands: Ω and the Klein bottle catalog."""

import logging
from pathlib import Path
from typing import Annotated, Optional

import typer

from immersion_tools.cli.parsing import (
    KLEIN_NAMES,
    JsonFlag,
    emit,
    handle_errors,
    klein_option,
    load_model,
)
from immersion_tools.mcg import is_in_ng, klein_bottle_catalog, klein_entry, omega_parities
from immersion_tools.models import HFormModel, MappingClassModel

logger = logging.getLogger(__name__)


def omega_command(
    file: Annotated[
        Optional[Path],
        typer.Option("--file", help="Mapping class JSON file", exists=True, dir_okay=False),
    ] = None,
    klein: Annotated[
        Optional[str],
        typer.Option(
            "--klein", help=f"Klein bottle class: {', '.join(KLEIN_NAMES)}", callback=klein_option
        ),
    ] = None,
    form: Annotated[
        Optional[Path],
        typer.Option(
            "--form", help="H-form JSON file; checks h ∈ N_g", exists=True, dir_okay=False
        ),
    ] = None,
    json_output: JsonFlag = False,
) -> None:
    """
    Compute Ω(h) = rank(h_* - Id) + ε(det h_**) mod 2.

    Ω(h) is the parity of both tangencies and quadruple points in any generic
    regular homotopy from i to i∘h.

    Example:
        immersion-tools omega --klein u
    """
    if (file is None) == (klein is None):
        raise typer.BadParameter("Give exactly one of --file and --klein")
    with handle_errors():
        if klein is not None:
            h = klein_entry(klein).data
        else:
            h = load_model(file, MappingClassModel).to_domain()
        in_ng = None
        if form is not None:
            g = load_model(form, HFormModel).to_domain()
            in_ng = is_in_ng(g, h)
            if not in_ng:
                typer.echo(
                    "⚠️  h_* does not preserve g: i and i∘h are not regularly homotopic, "
                    "so Ω has no geometric meaning here",
                    err=True,
                )
        parities = omega_parities(h)
    value = parities.tangency_parity
    payload = {"omega": value, "in_ng": in_ng, **parities.model_dump()}
    text = f"Ω = {value}"
    if in_ng is not None:
        text += f"\nh ∈ N_g: {'yes' if in_ng else 'no'}"
    emit(payload, json_output, text)


def klein_catalog_command(json_output: JsonFlag = False) -> None:
    """
    List the four mapping classes of the Klein bottle with their Ω values.
    """
    entries = klein_bottle_catalog()
    payload = [
        {
            "name": entry.name,
            "description": entry.description,
            "mapping_class": MappingClassModel.from_domain(entry.data).model_dump(mode="json"),
            "omega": entry.expected_omega,
        }
        for entry in entries
    ]
    lines = [
        f"{entry.name:<3} h_* = {entry.data.h_star.to_rows()}  "
        f"h_** = {entry.data.h_starstar.to_rows()}  Ω = {entry.expected_omega}  "
        f"({entry.description})"
        for entry in entries
    ]
    emit(payload, json_output, "\n".join(lines))


def register(app: typer.Typer) -> None:
    app.command("omega")(omega_command)
    app.command("klein-catalog")(klein_catalog_command)
