"""H-form and O(E, g) CLI commands."""

import logging
from pathlib import Path
from typing import Annotated

import typer

from immersion_tools.cli.parsing import FormFile, JsonFlag, emit, handle_errors, load_model
from immersion_tools.decomp import decompose, decompose_stable, psi, rewrite_s_free, word_product
from immersion_tools.errors import InternalExhaustion
from immersion_tools.hform import enumerate_group, orthonormalize, validate
from immersion_tools.logging_utils import create_enumeration_progress
from immersion_tools.models import (
    Gf2MatrixModel,
    GeneratorWordModel,
    HFormModel,
    OrthonormalBasisModel,
)

logger = logging.getLogger(__name__)

MatrixFile = Annotated[
    Path, typer.Option("--matrix", help="GF(2) matrix JSON file", exists=True, dir_okay=False)
]


def _bits(v) -> str:
    return "".join(map(str, v.bits))


def validate_form(form: FormFile, json_output: JsonFlag = False) -> None:
    """
    Check the H-form conditions and report the first violation.

    Example:
        immersion-tools validate-form --form g.json
    """
    with handle_errors():
        g = load_model(form, HFormModel).to_domain()
        violation = validate(g)
    if violation is None:
        text = f"✅ Valid H-form of dimension {g.dim}"
        emit({"valid": True, "violation": None}, json_output, text)
        return
    emit(
        {"valid": False, "violation": violation.model_dump()},
        json_output,
        f"❌ {violation.condition}: {violation.message}",
    )
    raise typer.Exit(1)


def orthonormalize_command(form: FormFile, json_output: JsonFlag = False) -> None:
    """
    Print an orthonormal basis e_1..e_n with the values d_i = g(e_i).
    """
    with handle_errors():
        g = load_model(form, HFormModel).to_domain()
        basis, values = orthonormalize(g)
    lines = [f"e_{i + 1} = {_bits(e)}  g = {d}" for i, (e, d) in enumerate(zip(basis, values))]
    emit(OrthonormalBasisModel.from_domain(basis, values), json_output, "\n".join(lines))


def decompose_command(
    form: FormFile,
    matrix: MatrixFile,
    stable: Annotated[
        bool, typer.Option("--stable", help="Stabilise to dimension 9 and return a T-only word")
    ] = False,
    json_output: JsonFlag = False,
) -> None:
    """
    Write an orthogonal matrix as a word of T- and S-generators.

    Example:
        immersion-tools decompose --form g.json --matrix m.json
    """
    with handle_errors():
        g = load_model(form, HFormModel).to_domain()
        m = load_model(matrix, Gf2MatrixModel).to_domain()
        if stable:
            g, word = decompose_stable(g, m)
        else:
            word = decompose(g, m)
    text = f"{word}\n({len(word)} letters, dim {word.dim})"
    emit(GeneratorWordModel.from_domain(word), json_output, text)


def rewrite_s_free_command(
    form: FormFile,
    word: Annotated[
        Path, typer.Option("--word", help="Generator word JSON file", exists=True, dir_okay=False)
    ],
    json_output: JsonFlag = False,
) -> None:
    """
    Replace every S-letter by four T-letters (dimension >= 9).
    """
    with handle_errors():
        g = load_model(form, HFormModel).to_domain()
        w = load_model(word, GeneratorWordModel).to_domain()
        rewritten = rewrite_s_free(g, w)
    text = f"{rewritten}\n({len(rewritten)} letters, dim {rewritten.dim})"
    emit(GeneratorWordModel.from_domain(rewritten), json_output, text)


def psi_command(matrix: MatrixFile, json_output: JsonFlag = False) -> None:
    """
    Print ψ(m) = rank(m - Id) mod 2.
    """
    with handle_errors():
        m = load_model(matrix, Gf2MatrixModel).to_domain()
        value = psi(m)
    emit({"psi": value}, json_output, f"ψ = {value}")


def enumerate_group_command(
    form: FormFile,
    verify: Annotated[
        bool, typer.Option("--verify", help="Decompose every element and check the product")
    ] = False,
    json_output: JsonFlag = False,
) -> None:
    """
    List O(E, g) exhaustively (dimension <= 6).
    """
    with handle_errors():
        g = load_model(form, HFormModel).to_domain()
        elements = enumerate_group(g)
        verified = None
        if verify:
            with create_enumeration_progress() as progress:
                task_id = progress.add_task("Verifying decompositions", total=len(elements))
                for m in elements:
                    if word_product(g, decompose(g, m)) != m:
                        raise InternalExhaustion(f"Decomposition does not reproduce {m!r}")
                    progress.advance(task_id)
            verified = True
    payload = {
        "order": len(elements),
        "verified": verified,
        "elements": [Gf2MatrixModel.from_domain(m).model_dump() for m in elements],
    }
    text = f"|O(E, g)| = {len(elements)}"
    if verified:
        text += f"\n✅ All {len(elements)} decompositions reproduce their matrix"
    emit(payload, json_output, text)


def register(app: typer.Typer) -> None:
    app.command("validate-form")(validate_form)
    app.command("orthonormalize")(orthonormalize_command)
    app.command("decompose")(decompose_command)
    app.command("rewrite-s-free")(rewrite_s_free_command)
    app.command("psi")(psi_command)
    app.command("enumerate-group")(enumerate_group_command)
