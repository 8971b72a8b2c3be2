"""Finite-order invariant CLI commands."""

import logging
from pathlib import Path
from typing import Annotated, Optional

import typer

from immersion_tools.abelian_groups import UNIVERSAL_GROUP, parse_group
from immersion_tools.ce_events import codim2_relations_check, f1u, universal_assignment
from immersion_tools.cli.parsing import JsonFlag, emit, group_option, handle_errors, load_model
from immersion_tools.models import (
    EventLogModel,
    MElementModel,
    SymbolAssignmentModel,
    UniversalValueModel,
)
from immersion_tools.series import m_structure, universal_invariant
from immersion_tools.symbol_functions import universality_report

logger = logging.getLogger(__name__)

EventsFile = Annotated[
    Path, typer.Option("--events", help="Event log JSON file", exists=True, dir_okay=False)
]
Degree = Annotated[int, typer.Option("--degree", min=0, help="Order n of the invariant")]
GroupText = Annotated[
    str, typer.Option("--group", help='Invariant factors, e.g. "2,4"', callback=group_option)
]


def f1u_command(events: EventsFile, json_output: JsonFlag = False) -> None:
    """
    Universal order-1 invariant of a logged regular homotopy.

    The value is normalised to 0 on the empty log; only differences are meaningful.
    """
    with handle_errors():
        log = load_model(events, EventLogModel).to_domain()
        value = f1u(log)
    emit(UniversalValueModel.from_domain(value), json_output, f"f1u = {value}")


def universal_command(events: EventsFile, degree: Degree, json_output: JsonFlag = False) -> None:
    """
    Universal order-n invariant F_n(f1u(log)) in M_n.

    Example:
        immersion-tools universal --events log.json --degree 2
    """
    with handle_errors():
        log = load_model(events, EventLogModel).to_domain()
        value = universal_invariant(log, degree)
    emit(MElementModel.from_domain(value), json_output, f"F_{degree} = {value}")


def m_structure_command(
    n: Annotated[int, typer.Argument(min=0, help="Degree n")],
    json_output: JsonFlag = False,
) -> None:
    """
    Cyclic decomposition of M_n.

    Example:
        immersion-tools m-structure 2
    """
    with handle_errors():
        structure = m_structure(n)
    emit(structure, json_output, structure.render())


def en_count_command(group: GroupText, degree: Degree, json_output: JsonFlag = False) -> None:
    """
    Count E_n(G) by enumeration and closed form, and compare with Hom(M_n, G).
    """
    with handle_errors():
        report = universality_report(parse_group(group), degree)
    lines = [
        f"|E_{degree}({report.group})| = {report.en_count}",
        f"closed form        = {report.closed_form}",
        f"|Hom(M_{degree}, G)|    = {report.hom_count}",
    ]
    if not report.matches:
        lines.append("⚠️  Finding: |E_n(G)| and |Hom(M_n, G)| differ")
    emit(report, json_output, "\n".join(lines))


def relations_check_command(
    assignment: Annotated[
        Optional[Path],
        typer.Option(
            "--assignment",
            help="JSON object mapping each CE symbol to a group element",
            exists=True,
            dir_okay=False,
        ),
    ] = None,
    group: Annotated[
        Optional[str],
        typer.Option("--group", help='Invariant factors, e.g. "2,4"', callback=group_option),
    ] = None,
    json_output: JsonFlag = False,
) -> None:
    """
    Check an order-1 assignment against the codimension-2 relations.

    Without --assignment the universal assignment over G_U is checked.
    """
    if (assignment is None) != (group is None):
        raise typer.BadParameter("--assignment and --group must be given together")
    with handle_errors():
        if assignment is None:
            target, values = UNIVERSAL_GROUP, universal_assignment()
        else:
            target = parse_group(group)
            values = load_model(assignment, SymbolAssignmentModel).root
        holds = codim2_relations_check(target, values)
    text = f"Relations {'hold' if holds else 'are violated'} over {target}"
    emit({"group": str(target), "holds": holds}, json_output, text)


def register(app: typer.Typer) -> None:
    app.command("f1u")(f1u_command)
    app.command("universal")(universal_command)
    app.command("m-structure")(m_structure_command)
    app.command("en-count")(en_count_command)
    app.command("relations-check")(relations_check_command)
