"""Exact solver commands: solve and spynum."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import typer
from rich.console import Group

from revspy.cli.formatting import game_table, print_renderable, solution_table
from revspy.cli.main import (
    OutputFormat,
    app,
    configure_logging,
    emit,
    fail,
    resolve_graph,
    to_json,
)
from revspy.config import Settings
from revspy.core.exceptions import ParameterError, RevSpyError
from revspy.core.game import play, trace_to_dict
from revspy.core.models import GameConfig
from revspy.core.solver import extract_strategies, verify_trivial_bounds
from revspy.core.solver import solve as solve_game


@app.command()
def solve(
    graph: Path | None = typer.Option(None, "--graph", "-g", help="Edge-list file."),
    n: int | None = typer.Option(None, "--n", help="Sample G(n,p) instead of reading --graph."),
    p: float | None = typer.Option(None, "--p", help="Edge probability when sampling."),
    seed: int = typer.Option(0, "--seed", help="Graph seed when sampling."),
    r: int = typer.Option(..., "--r", help="Number of revolutionaries."),
    m: int = typer.Option(..., "--m", help="Meeting size."),
    s: int = typer.Option(..., "--s", help="Number of spies."),
    budget: int | None = typer.Option(None, "--budget", help="Largest state count to explore."),
    strategies: bool = typer.Option(
        False,
        "--strategies",
        help="Also play the extracted strategies against each other and include the trace.",
    ),
    horizon: int | None = typer.Option(None, "--horizon", help="Rounds for --strategies (default: states + 1)."),
    fmt: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="json or text."),
    out: Path | None = typer.Option(None, "--out", "-o", help="Write here instead of stdout."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr."),
) -> None:
    """Decide a small game instance under perfect play."""
    configure_logging(verbose)
    try:
        if fmt is OutputFormat.CSV:
            raise ParameterError("format", str(fmt), "solve supports json and text")
        settings = Settings.from_env()
        g = resolve_graph(graph, n, p, seed)
        solution = solve_game(g, r, m, s, settings.solver_budget if budget is None else budget)
        payload: dict[str, Any] = solution.to_dict()
        result = None
        if strategies:
            rev_strategy, spy_strategy = extract_strategies(solution)
            # a forced win never needs more rounds than there are states
            rounds = solution.states + 1 if horizon is None else horizon
            result = play(g, GameConfig(r=r, m=m, s=s, horizon=rounds), rev_strategy, spy_strategy, seed)
            payload["trace"] = trace_to_dict(result)
    except RevSpyError as e:
        fail(e, fmt)

    if fmt is OutputFormat.TEXT:
        tables = [solution_table(solution)] if result is None else [solution_table(solution), game_table(result)]
        print_renderable(Group(*tables), out)
        return
    emit(to_json(payload), out)


@app.command()
def spynum(
    graph: Path | None = typer.Option(None, "--graph", "-g", help="Edge-list file."),
    n: int | None = typer.Option(None, "--n", help="Sample G(n,p) instead of reading --graph."),
    p: float | None = typer.Option(None, "--p", help="Edge probability when sampling."),
    seed: int = typer.Option(0, "--seed", help="Graph seed when sampling."),
    r: int = typer.Option(..., "--r", help="Number of revolutionaries."),
    m: int = typer.Option(..., "--m", help="Meeting size."),
    budget: int | None = typer.Option(None, "--budget", help="Largest state count per solve."),
    fmt: OutputFormat = typer.Option(OutputFormat.TEXT, "--format", "-f", help="text or json."),
    out: Path | None = typer.Option(None, "--out", "-o", help="Write here instead of stdout."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr."),
) -> None:
    """Print the exact spy number with the trivial bound check.

    Text output is one line, e.g. ``1  (1 <= sigma <= 2: ok)``.
    """
    configure_logging(verbose)
    try:
        if fmt is OutputFormat.CSV:
            raise ParameterError("format", str(fmt), "spynum supports text and json")
        settings = Settings.from_env()
        g = resolve_graph(graph, n, p, seed)
        bounds = verify_trivial_bounds(g, r, m, settings.solver_budget if budget is None else budget)
    except RevSpyError as e:
        fail(e, fmt)

    if fmt is OutputFormat.JSON:
        emit(to_json(bounds.to_dict()), out)
        return
    if bounds.vacuous:
        note = "m > r: no meeting can form"
    else:
        status = "ok" if bounds.holds else "VIOLATED"
        note = f"{bounds.lower} <= sigma <= {bounds.upper}: {status}"
    emit(f"{bounds.sigma}  ({note})", out)
