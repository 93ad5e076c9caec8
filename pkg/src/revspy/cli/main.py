"""CLI application, shared options and error reporting for revspy."""

from __future__ import annotations

import json
import logging
import sys
from enum import StrEnum
from pathlib import Path
from typing import TYPE_CHECKING, Any, NoReturn

import click
import typer
from rich.console import Console
from rich.logging import RichHandler

from revspy.core.exceptions import (
    BudgetExceededError,
    GraphFormatError,
    ParameterError,
    RevSpyError,
)
from revspy.core.graph import GnpParams, load_graph, sample_gnp


if TYPE_CHECKING:
    from collections.abc import Sequence

    from revspy.core.graph import Graph


app = typer.Typer(
    name="revspy",
    help="Revolutionaries and Spies: random-graph properties, games and spy numbers.",
    no_args_is_help=True,
    add_completion=False,
)

EXIT_DOMAIN = 1
EXIT_BUDGET = 2


class OutputFormat(StrEnum):
    """Machine-readable or human output."""

    JSON = "json"
    CSV = "csv"
    TEXT = "text"


def configure_logging(verbose: bool) -> None:
    """Route revspy logs to a RichHandler on stderr (DEBUG with --verbose)."""
    handler = RichHandler(
        console=Console(stderr=True),
        markup=False,
        show_path=False,
        show_time=False,
    )
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    root = logging.getLogger("revspy")
    root.handlers.clear()
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)
    root.propagate = False


def fail(error: RevSpyError, fmt: OutputFormat = OutputFormat.TEXT) -> NoReturn:
    """Report a domain error on stderr and exit (2 for budget refusals, else 1)."""
    code = EXIT_BUDGET if isinstance(error, BudgetExceededError) else EXIT_DOMAIN
    if fmt is OutputFormat.JSON:
        payload = {
            "error": type(error).__name__,
            "message": str(error),
            "hint": error.recovery_hint,
        }
        typer.echo(json.dumps(payload), err=True)
    else:
        typer.echo(f"Error: {error}", err=True)
        if error.recovery_hint:
            typer.echo(f"Hint: {error.recovery_hint}", err=True)
    raise typer.Exit(code)


def emit(text: str, out: Path | None = None) -> None:
    """Write output to ``out`` or stdout; text always ends with one newline."""
    body = text if text.endswith("\n") else text + "\n"
    if out is None:
        typer.echo(body, nl=False)
        return
    out.write_text(body, encoding="utf-8")


def to_json(payload: Any) -> str:
    """Stable JSON rendering used by every subcommand."""
    return json.dumps(payload, indent=2)


def read_graph(path: Path) -> Graph:
    """Load an edge-list file.

    Raises:
        ParameterError: If the file cannot be read.
        GraphFormatError: If it is malformed.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise GraphFormatError(f"{path} is not UTF-8 text (byte {e.start})") from None
    except OSError as e:
        raise ParameterError("graph", str(path), f"cannot read file ({e.strerror})") from None
    return load_graph(text)


def resolve_graph(
    graph: Path | None, n: int | None, p: float | None, seed: int
) -> Graph:
    """The ``--graph`` file, or G(n,p) sampled from ``--n/--p/--seed``.

    Raises:
        ParameterError: If neither source is complete.
    """
    if graph is not None:
        return read_graph(graph)
    if n is None or p is None:
        raise ParameterError("graph", None, "give --graph or both --n and --p")
    return sample_gnp(GnpParams(n=n, p=p, seed=seed))


def parse_vertices(raw: str) -> list[int]:
    """Comma separated vertex ids, e.g. ``0,4,9``."""
    try:
        return [int(item) for item in raw.split(",") if item.strip()]
    except ValueError:
        raise ParameterError("vertices", raw, "expected comma separated integers") from None


def dispatch(argv: Sequence[str] | None = None) -> int:
    """Run the CLI on ``argv`` and return the exit code instead of exiting.

    Usage errors (unknown flags, missing options) print the usage text and
    return 1.
    """
    command = typer.main.get_command(app)
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        result = command.main(args=args, prog_name="revspy", standalone_mode=False)
    except click.exceptions.UsageError as e:
        e.show()
        return EXIT_DOMAIN
    except click.exceptions.Abort:
        typer.echo("Aborted.", err=True)
        return EXIT_DOMAIN
    except click.exceptions.ClickException as e:
        e.show()
        return EXIT_DOMAIN
    return result if isinstance(result, int) else 0


def main() -> None:
    """Entry point for the CLI."""
    sys.exit(dispatch())
