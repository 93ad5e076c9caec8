"""Property check command."""

from __future__ import annotations

import math
from enum import StrEnum
from pathlib import Path
from typing import TYPE_CHECKING

import typer

from revspy.adapters.executor import make_executor
from revspy.cli.formatting import print_renderable, report_table
from revspy.cli.main import (
    OutputFormat,
    app,
    configure_logging,
    emit,
    fail,
    parse_vertices,
    resolve_graph,
    to_json,
)
from revspy.config import Settings
from revspy.core.exceptions import ParameterError, RevSpyError
from revspy.core.graph import GnpParams, LazyGnp
from revspy.core.models import CheckMode, ECVariant
from revspy.core.properties import (
    audit_expansion,
    check_biclique_free,
    check_common_neighbor_bound,
    check_ec,
    check_matching_set,
    check_nonneighborhood_bound,
    check_nonneighborhood_slack,
)
from revspy.core.rng import derive_seed


if TYPE_CHECKING:
    from revspy.core.graph import NeighborhoodView
    from revspy.core.models import ExpansionReport, PropertyReport


class CheckProperty(StrEnum):
    """Properties the check command knows."""

    EC = "ec"
    ONE_EC = "one-ec"
    EC_J = "ec-j"
    ONE_EC_J = "one-ec-j"
    NONNEIGHBORHOOD = "nonneighborhood"
    NONNEIGHBORHOOD_SLACK = "nonneighborhood-slack"
    MATCHING_SET = "matching-set"
    COMMON_NEIGHBOR = "common-neighbor"
    BICLIQUE = "biclique"
    EXPANSION = "expansion"


class CheckModeName(StrEnum):
    """Exact enumeration or seeded sampling."""

    EXACT = "exact"
    SAMPLED = "sampled"


_EC_PROPERTIES = {
    CheckProperty.EC: ECVariant.EC,
    CheckProperty.ONE_EC: ECVariant.ONE_EC,
    CheckProperty.EC_J: ECVariant.EC_J,
    CheckProperty.ONE_EC_J: ECVariant.ONE_EC_J,
}


def _view(graph: Path | None, n: int | None, p: float | None, seed: int) -> NeighborhoodView:
    # expansion audits on sampled graphs never materialize the edge list
    if graph is None and n is not None and p is not None:
        return LazyGnp(GnpParams(n=n, p=p, seed=seed))
    return resolve_graph(graph, n, p, seed)


def _required(name: str, value: float | None) -> float:
    if value is None:
        raise ParameterError(name, None, f"--{name} is required for this property")
    return value


def _default_tol(n: int) -> float:
    if n < 3:
        raise ParameterError("tol", None, "give --tol explicitly when n < 3")
    return 2.0 / math.log(n)


@app.command()
def check(
    prop: CheckProperty = typer.Argument(..., metavar="PROPERTY", help="Property to check."),
    graph: Path | None = typer.Option(None, "--graph", "-g", help="Edge-list file."),
    n: int | None = typer.Option(None, "--n", help="Sample G(n,p) instead of reading --graph."),
    p: float | None = typer.Option(None, "--p", help="Edge probability (sampling and Ln)."),
    seed: int = typer.Option(0, "--seed", help="Graph and matching seed; sampled queries derive their own."),
    size_a: int = typer.Option(2, "--l", help="|A| for e.c. properties."),
    size_b: int = typer.Option(1, "--k", help="|B| for e.c. properties."),
    j: int = typer.Option(1, "--j", help="Radius for the -j variants."),
    mode: CheckModeName = typer.Option(CheckModeName.EXACT, "--mode", help="Exact enumeration or sampling."),
    trials: int = typer.Option(10_000, "--trials", help="Sampled queries."),
    beta: float | None = typer.Option(None, "--beta", help="Set-size factor (nonneighborhood)."),
    alpha: float | None = typer.Option(None, "--alpha", help="Intersection factor (nonneighborhood)."),
    eps: float | None = typer.Option(None, "--eps", help="Slack (nonneighborhood-slack)."),
    gamma: float | None = typer.Option(None, "--gamma", help="Set-size factor (matching-set)."),
    delta: float | None = typer.Option(None, "--delta", help="Hall range factor (matching-set)."),
    cap: int | None = typer.Option(None, "--cap", help="Common-neighbour cap."),
    t: int | None = typer.Option(None, "--t", help="Biclique side t of K_2,t."),
    vertices: str = typer.Option("0", "--set", help="Comma separated S (expansion)."),
    radius: int = typer.Option(1, "--radius", help="Ball radius i (expansion)."),
    degree: float | None = typer.Option(None, "--d", help="Degree d (expansion; default inferred)."),
    extra: int | None = typer.Option(None, "--x", help="Extra vertex x (expansion)."),
    tol: float | None = typer.Option(None, "--tol", help="Relative tolerance (default 2/ln n)."),
    budget: int | None = typer.Option(None, "--budget", help="Exact enumeration budget."),
    fmt: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="json or text."),
    out: Path | None = typer.Option(None, "--out", "-o", help="Write here instead of stdout."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr."),
) -> None:
    """Check one random-graph property and print its report."""
    configure_logging(verbose)
    report: PropertyReport | ExpansionReport
    try:
        if fmt is OutputFormat.CSV:
            raise ParameterError("format", str(fmt), "check supports json and text")
        settings = Settings.from_env()
        limit = settings.ec_budget if budget is None else budget
        check_mode = (
            CheckMode.sampled(trials, derive_seed(seed, "trials"))
            if mode is CheckModeName.SAMPLED
            else CheckMode.exact()
        )
        if prop is CheckProperty.EXPANSION:
            view = _view(graph, n, p, seed)
            report = audit_expansion(
                view,
                parse_vertices(vertices),
                radius,
                _default_tol(view.n) if tol is None else tol,
                degree,
                extra,
            )
        elif prop in _EC_PROPERTIES:
            g = resolve_graph(graph, n, p, seed)
            with make_executor(settings.threads) as executor:
                report = check_ec(
                    g, _EC_PROPERTIES[prop], size_a, size_b, j, check_mode, limit, executor
                )
        elif prop is CheckProperty.NONNEIGHBORHOOD:
            report = check_nonneighborhood_bound(
                resolve_graph(graph, n, p, seed),
                _required("beta", beta),
                _required("alpha", alpha),
                check_mode,
                p,
                limit,
            )
        elif prop is CheckProperty.NONNEIGHBORHOOD_SLACK:
            report = check_nonneighborhood_slack(
                resolve_graph(graph, n, p, seed),
                _required("beta", beta),
                _required("eps", eps),
                check_mode,
                p,
                limit,
            )
        elif prop is CheckProperty.MATCHING_SET:
            report = check_matching_set(
                resolve_graph(graph, n, p, seed),
                _required("gamma", gamma),
                _required("delta", delta),
                seed,
                settings.matching_retries,
                settings.matching_repairs,
                p,
            )
        elif prop is CheckProperty.COMMON_NEIGHBOR:
            report = check_common_neighbor_bound(
                resolve_graph(graph, n, p, seed), int(_required("cap", cap))
            )
        else:
            report = check_biclique_free(resolve_graph(graph, n, p, seed), int(_required("t", t)))
    except RevSpyError as e:
        fail(e, fmt)

    if fmt is OutputFormat.TEXT:
        print_renderable(report_table(report), out)
        return
    emit(to_json(report.to_dict()), out)
