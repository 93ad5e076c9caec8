"""Experiment commands: sweep, predict and threshold."""

from __future__ import annotations

from pathlib import Path

import typer

from revspy.adapters.executor import make_executor
from revspy.adapters.tables import frame_to_csv, rows_to_frame, rows_to_json, summarize_sweep
from revspy.cli.formatting import frame_table, prediction_table, print_renderable
from revspy.cli.main import OutputFormat, app, configure_logging, emit, fail, to_json
from revspy.config import Settings, load_sweep_spec
from revspy.core.exceptions import RevSpyError
from revspy.core.experiments import (
    SWEEP_EC_BUDGET,
    SweepBudgets,
    classify_regime,
    ec_threshold_scan,
    run_sweep,
)
from revspy.progress import RichProgressReporter


@app.command()
def sweep(
    spec_path: Path = typer.Option(..., "--spec", help="Sweep spec file (key = value lines)."),
    threads: int | None = typer.Option(None, "--threads", help="Worker threads (0 = one per CPU)."),
    summary: bool = typer.Option(False, "--summary", help="Print per-cell rates instead of rows."),
    progress: bool = typer.Option(True, "--progress/--no-progress", help="Progress bar on stderr."),
    fmt: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f", help="csv, json or text."),
    out: Path | None = typer.Option(None, "--out", "-o", help="Write here instead of stdout."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr."),
) -> None:
    """Run a Monte Carlo sweep over a grid of (n, p, r, m) cells.

    Rows come out in grid order whatever the number of threads.
    """
    configure_logging(verbose)
    try:
        settings = Settings.from_env()
        spec = load_sweep_spec(spec_path)
        budgets = SweepBudgets(
            ec=min(settings.ec_budget, SWEEP_EC_BUDGET),
            solver=settings.solver_budget,
            retries=settings.matching_retries,
            repairs=settings.matching_repairs,
        )
        workers = settings.threads if threads is None else threads
        with make_executor(workers) as executor:
            if progress:
                with RichProgressReporter() as reporter:
                    rows = run_sweep(spec, executor, reporter, budgets)
            else:
                rows = run_sweep(spec, executor, None, budgets)
    except RevSpyError as e:
        fail(e, fmt)

    frame = rows_to_frame(rows)
    if summary:
        frame = summarize_sweep(frame)
    if fmt is OutputFormat.TEXT:
        print_renderable(frame_table(frame, title=str(spec_path)), out)
    elif fmt is OutputFormat.JSON:
        emit(to_json(frame.to_dicts()) if summary else rows_to_json(rows), out)
    else:
        emit(frame_to_csv(frame), out)


@app.command()
def predict(
    n: int = typer.Option(..., "--n", help="Number of vertices."),
    p: float = typer.Option(..., "--p", help="Edge probability."),
    r: int = typer.Option(..., "--r", help="Number of revolutionaries."),
    m: int = typer.Option(..., "--m", help="Meeting size."),
    omega: float | None = typer.Option(None, "--omega", help="Slowly growing gate function (default ln ln n)."),
    eps: float = typer.Option(0.1, "--eps", help="Slack of the three-team upper bound."),
    fmt: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="json or text."),
    out: Path | None = typer.Option(None, "--out", "-o", help="Write here instead of stdout."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr."),
) -> None:
    """Classify (n, p, r, m) into a regime and print the predicted spy number."""
    configure_logging(verbose)
    try:
        prediction = classify_regime(n, p, r, m, omega, eps)
    except RevSpyError as e:
        fail(e, fmt)

    if fmt is OutputFormat.TEXT:
        print_renderable(prediction_table(prediction), out)
        return
    emit(to_json(prediction.to_dict()), out)


@app.command()
def threshold(
    n: int = typer.Option(..., "--n", help="Number of vertices."),
    p: float = typer.Option(..., "--p", help="Edge probability."),
    seed: int = typer.Option(0, "--seed", help="First graph seed."),
    trials: int = typer.Option(5, "--trials", help="Graphs, seeded seed..seed+trials-1."),
    s_max: int = typer.Option(3, "--s-max", help="Largest |B| to check."),
    budget: int | None = typer.Option(None, "--budget", help="Exact enumeration budget per check."),
    out: Path | None = typer.Option(None, "--out", "-o", help="Write here instead of stdout."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr."),
) -> None:
    """Largest s with exact (2,s)-e.c. per seeded G(n,p), next to the prediction."""
    configure_logging(verbose)
    try:
        settings = Settings.from_env()
        scan = ec_threshold_scan(
            n,
            p,
            range(seed, seed + trials),
            s_max,
            settings.ec_budget if budget is None else budget,
        )
    except RevSpyError as e:
        fail(e, OutputFormat.JSON)
    emit(to_json(scan.to_dict()), out)
