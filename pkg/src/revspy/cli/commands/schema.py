"""Schema command."""

from __future__ import annotations

from pathlib import Path

import typer

from revspy.cli.main import app, emit, fail
from revspy.core.exceptions import RevSpyError
from revspy.schemas import schema_names, schema_text


@app.command()
def schema(
    name: str | None = typer.Argument(None, help="Schema name; omit to list them."),
    out: Path | None = typer.Option(None, "--out", "-o", help="Write here instead of stdout."),
) -> None:
    """Print a shipped JSON schema (trace, report, sweep-row, ...)."""
    if name is None:
        emit("\n".join(schema_names()), out)
        return
    try:
        text = schema_text(name)
    except RevSpyError as e:
        fail(e)
    emit(text, out)
