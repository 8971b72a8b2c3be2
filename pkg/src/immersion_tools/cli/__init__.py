"""Command-line interface for immersion_tools."""

import typer

from immersion_tools import __version__
from immersion_tools.cli import forms, invariants, mapping
from immersion_tools.logging_utils import configure_logging


def version_callback(value: bool):
    """Print version and exit."""
    if value:
        typer.echo(f"immersion-tools version {__version__}")
        raise typer.Exit()


app = typer.Typer(
    name="immersion-tools",
    help="H-forms over GF(2), O(E, g) generator words, Ω of mapping classes "
    "and universal finite-order invariants of immersed surfaces",
    no_args_is_help=True,
)


@app.callback()
def main_callback(
    version: bool = typer.Option(
        None,
        "--version",
        "-v",
        help="Show version and exit",
        callback=version_callback,
        is_eager=True,
    ),
    log_level: str = typer.Option(
        "WARNING", "--log-level", help="Logging level (DEBUG traces decompositions)"
    ),
):
    """Main callback to handle global options."""
    configure_logging(log_level)


forms.register(app)
mapping.register(app)
invariants.register(app)


def main():
    """Entry point for the CLI."""
    configure_logging()
    app()


if __name__ == "__main__":
    main()
