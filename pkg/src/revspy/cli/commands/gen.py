"""Graph generation command."""

from __future__ import annotations

from pathlib import Path

import typer

from revspy.cli.main import app, configure_logging, emit, fail
from revspy.core.exceptions import RevSpyError
from revspy.core.graph import GnpParams, sample_gnp, save_graph


@app.command()
def gen(
    n: int = typer.Option(..., "--n", help="Number of vertices."),
    p: float = typer.Option(..., "--p", help="Edge probability."),
    seed: int = typer.Option(0, "--seed", help="Sampling seed."),
    out: Path | None = typer.Option(None, "--out", "-o", help="Write here instead of stdout."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr."),
) -> None:
    """Sample G(n,p) and print it as an edge list (identical for identical seeds)."""
    configure_logging(verbose)
    try:
        graph = sample_gnp(GnpParams(n=n, p=p, seed=seed))
    except RevSpyError as e:
        fail(e)
    emit(save_graph(graph), out)
