"""Game simulation and trace replay commands."""

from __future__ import annotations

import json
from pathlib import Path
from typing import TYPE_CHECKING

import typer

from revspy.cli.formatting import game_table, print_renderable
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
from revspy.core.exceptions import ParameterError, RevSpyError, TraceFormatError
from revspy.core.game import play as play_game
from revspy.core.game import replay as replay_game
from revspy.core.game import trace_to_dict
from revspy.core.models import GameConfig
from revspy.core.strategies import (
    build_rev_strategy,
    build_spy_strategy,
    spy_team_parameters,
)


if TYPE_CHECKING:
    from revspy.core.graph import Graph


def default_spies(g: Graph, r: int, m: int, eps: float) -> int:
    """Spy count used when ``--s`` is omitted.

    The three-team total when the graph density makes it meaningful, else
    the trivial sufficient count r-m+1; never more than n.
    """
    if m > r:
        return 0
    pairs = g.n * (g.n - 1) // 2
    p = g.edge_count / pairs if pairs else 0.0
    if 0.0 < p < 1.0:
        return min(g.n, spy_team_parameters(g.n, p, eps, r, m).total)
    return min(g.n, r - m + 1)


@app.command()
def play(
    graph: Path | None = typer.Option(None, "--graph", "-g", help="Edge-list file."),
    n: int | None = typer.Option(None, "--n", help="Sample G(n,p) instead of reading --graph."),
    p: float | None = typer.Option(None, "--p", help="Edge probability when sampling."),
    r: int = typer.Option(..., "--r", help="Number of revolutionaries."),
    m: int = typer.Option(..., "--m", help="Meeting size."),
    s: int | None = typer.Option(None, "--s", help="Number of spies (default: three-team total)."),
    rev: str = typer.Option("ec-growth:j=1", "--rev", help="Revolutionary strategy spec."),
    spy: str = typer.Option("three-teams:eps=0.1", "--spy", help="Spy strategy spec."),
    eps: float = typer.Option(0.1, "--eps", help="Slack for the default spy count."),
    horizon: int = typer.Option(100, "--horizon", help="Rounds before the spies survive."),
    seed: int = typer.Option(0, "--seed", help="Graph and game seed."),
    fmt: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="json or text."),
    out: Path | None = typer.Option(None, "--out", "-o", help="Write here instead of stdout."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr."),
) -> None:
    """Simulate one game and print its trace."""
    configure_logging(verbose)
    try:
        if fmt is OutputFormat.CSV:
            raise ParameterError("format", str(fmt), "play supports json and text")
        settings = Settings.from_env()
        g = resolve_graph(graph, n, p, seed)
        spies = default_spies(g, r, m, eps) if s is None else s
        config = GameConfig(r=r, m=m, s=spies, horizon=horizon)
        result = play_game(
            g,
            config,
            build_rev_strategy(rev),
            build_spy_strategy(
                spy,
                retries=settings.matching_retries,
                repairs=settings.matching_repairs,
            ),
            seed,
        )
    except RevSpyError as e:
        fail(e, fmt)

    if fmt is OutputFormat.TEXT:
        print_renderable(game_table(result), out)
        return
    emit(to_json(trace_to_dict(result)), out)


@app.command()
def replay(
    trace: Path = typer.Argument(..., help="Trace JSON written by 'revspy play'."),
    graph: Path | None = typer.Option(None, "--graph", "-g", help="Edge-list file."),
    n: int | None = typer.Option(None, "--n", help="Sample G(n,p) instead of reading --graph."),
    p: float | None = typer.Option(None, "--p", help="Edge probability when sampling."),
    seed: int = typer.Option(0, "--seed", help="Graph seed when sampling."),
    fmt: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="json or text."),
    out: Path | None = typer.Option(None, "--out", "-o", help="Write here instead of stdout."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr."),
) -> None:
    """Re-validate every move of a trace and re-derive its verdict."""
    configure_logging(verbose)
    try:
        try:
            data = json.loads(trace.read_text(encoding="utf-8"))
        except UnicodeDecodeError as e:
            raise TraceFormatError(f"trace is not UTF-8 text (byte {e.start})") from None
        except OSError as e:
            raise ParameterError("trace", str(trace), f"cannot read file ({e.strerror})") from None
        except json.JSONDecodeError as e:
            raise TraceFormatError(f"trace is not JSON: {e.msg} (line {e.lineno})") from None
        if not isinstance(data, dict):
            raise TraceFormatError("trace must be a JSON object")
        result = replay_game(resolve_graph(graph, n, p, seed), data)
    except RevSpyError as e:
        fail(e, fmt)

    if fmt is OutputFormat.TEXT:
        print_renderable(game_table(result), out)
        return
    verdict = trace_to_dict(result)["verdict"]
    emit(to_json({"valid": True, "rounds": result.rounds_played, "verdict": verdict}), out)
