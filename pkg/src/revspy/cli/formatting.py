"""Shared rich formatting helpers for ``--format text`` output."""

from __future__ import annotations

import io
from typing import TYPE_CHECKING, Any

from rich.console import Console
from rich.table import Table
from rich.text import Text

from revspy.core.models import ExpansionReport, Outcome, Verdict


if TYPE_CHECKING:
    from pathlib import Path

    import polars as pl
    from rich.console import RenderableType

    from revspy.core.models import GameResult, PropertyReport, RegimePrediction
    from revspy.core.solver import Solution


_VERDICT_COLORS = {
    Verdict.HOLDS: "green",
    Verdict.FAILS: "red",
    Verdict.REFUTED: "red",
    Verdict.INCONCLUSIVE: "yellow",
}


def _flag(value: bool | None) -> Text:
    """Color a pass/fail flag; None prints as a dim dash."""
    if value is None:
        return Text("-", style="dim")
    return Text("yes", style="green") if value else Text("no", style="red")


def _verdict_text(verdict: Verdict) -> Text:
    return Text(str(verdict), style=_VERDICT_COLORS[verdict])


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _pairs_table(title: str, rows: list[tuple[str, str | Text]]) -> Table:
    table = Table(title=title, show_header=False)
    table.add_column("Field", style="bold")
    table.add_column("Value")
    for name, value in rows:
        table.add_row(name, value)
    return table


def report_table(report: PropertyReport | ExpansionReport) -> Table:
    """Two-column table for a property or expansion report."""
    if isinstance(report, ExpansionReport):
        return _pairs_table(
            f"expansion(i={report.radius})",
            [
                ("|S|", str(len(report.S))),
                ("d", _fmt(report.d)),
                ("|N[S,i]|", str(report.size)),
                ("s*d^i", _fmt(report.expected)),
                ("ratio", _fmt(report.ratio)),
                ("out of regime", _flag(report.out_of_regime)),
                ("ratio pass", _flag(report.ratio_pass)),
                ("difference", "-" if report.difference is None else str(report.difference)),
                ("difference pass", _flag(report.difference_pass)),
            ],
        )
    rows: list[tuple[str, str | Text]] = [
        ("mode", report.mode.label),
        ("verdict", _verdict_text(report.verdict)),
        ("vacuous", _flag(report.vacuous)),
    ]
    rows += [(name, _fmt(value)) for name, value in report.stats.items()]
    rows += [(name, _fmt(value)) for name, value in report.measured.items()]
    if report.witness is not None:
        rows.append(("witness", _fmt(report.witness)))
    return _pairs_table(report.property, rows)


def game_table(result: GameResult) -> Table:
    """One row per recorded round end, verdict in the caption."""
    table = Table(title=f"{result.rev_strategy} vs {result.spy_strategy}")
    table.add_column("Round", justify="right")
    table.add_column("Revolutionaries")
    table.add_column("Spies")
    table.add_column("Unguarded")
    table.add_column("Events")
    for rnd in result.rounds:
        table.add_row(
            str(rnd.round),
            " ".join(map(str, rnd.rev)),
            " ".join(map(str, rnd.spy)),
            Text(" ".join(map(str, rnd.unguarded)), style="red") if rnd.unguarded else "",
            ", ".join(str(e.kind) for e in rnd.events),
        )
    style = "green" if result.winner is Outcome.REVOLUTIONARIES else "cyan"
    when = "" if result.winning_round is None else f" in round {result.winning_round}"
    forfeit = "" if result.forfeit is None else f" ({result.forfeit} forfeited)"
    table.caption = f"[{style}]{result.winner}[/{style}]{when}{forfeit}"
    return table


def solution_table(solution: Solution) -> Table:
    opening = "-" if solution.opening is None else " ".join(map(str, solution.opening))
    return _pairs_table(
        f"solve r={solution.r} m={solution.m} s={solution.s}",
        [
            ("winner", Text(str(solution.winner), style="bold")),
            ("states", str(solution.states)),
            ("attractor", str(solution.attractor)),
            ("closure", _flag(solution.closure_ok)),
            ("opening", opening),
        ],
    )


def prediction_table(prediction: RegimePrediction) -> Table:
    rows: list[tuple[str, str | Text]] = [
        (name, _fmt(value)) for name, value in prediction.to_dict().items()
    ]
    return _pairs_table("regime prediction", rows)


def frame_table(frame: pl.DataFrame, title: str | None = None) -> Table:
    """Render a polars frame column by column."""
    table = Table(title=title)
    for name in frame.columns:
        table.add_column(name)
    for row in frame.iter_rows():
        table.add_row(*("" if v is None else _fmt(v) for v in row))
    return table


def print_renderable(renderable: RenderableType, out: Path | None = None) -> None:
    """Print to stdout, or write plain text to ``out``."""
    if out is None:
        Console().print(renderable)
        return
    buffer = io.StringIO()
    Console(file=buffer, width=120, no_color=True, force_terminal=False).print(renderable)
    out.write_text(buffer.getvalue(), encoding="utf-8")
