"""Regime classifier and Monte Carlo sweeps.

At finite n the asymptotic notation of the regime statements is read with
a slowly growing ``omega`` (default ln ln n):

    x >> y     x >= omega * y
    x = o(y)   omega * x <= y
    x = O(1)   x <= omega
    x = O(y)   x < omega * y

Gates are checked in a fixed order and the first match wins.
"""

from __future__ import annotations

import logging
import math
import statistics
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

from revspy.core.exceptions import BudgetExceededError, ParameterError, RevSpyError
from revspy.core.game import play
from revspy.core.graph import GnpParams, ell_n, estimate_eta, sample_gnp
from revspy.core.models import (
    CellMethod,
    CheckMode,
    ECVariant,
    GameConfig,
    Outcome,
    Regime,
    RegimePrediction,
    Verdict,
)
from revspy.core.ports import NullProgressReporter
from revspy.core.properties import DEFAULT_EC_BUDGET, check_ec, predicted_ec_threshold
from revspy.core.rng import derive_seed
from revspy.core.solver import DEFAULT_SOLVER_BUDGET, spy_number_exact
from revspy.core.strategies import (
    build_rev_strategy,
    build_spy_strategy,
    parse_strategy_spec,
    spy_team_parameters,
    spy_upper_bound,
)


if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from revspy.core.graph import Graph
    from revspy.core.models import SweepSpec
    from revspy.core.ports import ExecutorPort, ProgressReporter


logger = logging.getLogger(__name__)

DENSE_EC_CONSTANT = 2.99
MID_EC_CONSTANT = 1.99
EVIDENCE_TRIALS = 2000
SWEEP_EC_BUDGET = 10**6

SWEEP_COLUMNS = (
    "n",
    "p",
    "r",
    "m",
    "regime",
    "prediction",
    "cert_lb",
    "evidence_lb",
    "exact_sigma",
    "spy_survival",
    "rev_win",
    "seed",
    "error",
)


# ---------------------------------------------------------------------------
# Regime classification
# ---------------------------------------------------------------------------


def default_omega(n: float) -> float:
    """ln ln n, floored at 1 so the gates stay meaningful for small n."""
    return max(1.0, math.log(math.log(n))) if n > math.e else 1.0


def _band_edges(eta6: float) -> dict[str, float]:
    """Exponent edges g < f of the unresolved sparse band for pn = n^eta6."""
    if not 0.0 < eta6 < 0.5:
        return {}
    g_edge = eta6 if eta6 <= 1.0 / 3.0 else 1.0 - 2.0 * eta6
    return {"g": g_edge, "f": 1.0 - eta6}


def _sparse_gap_case(n: float, pn: float, gap: float, omega: float) -> str | None:
    """Which growing-gap case applies to a sparse graph, if any."""
    scale = omega * n * math.log(n)
    quarter, sixth = scale**0.25, scale ** (1.0 / 6.0)
    if pn >= quarter:
        return "i" if omega * gap <= min(pn, n / pn**2) else None
    if pn >= sixth:
        return "ii" if omega * gap <= pn / (omega * math.log(n)) else None
    return "iii" if omega * gap <= pn else None


def classify_regime(
    n: int,
    p: float,
    r: int,
    m: int,
    omega: float | None = None,
    eps: float = 0.1,
) -> RegimePrediction:
    """Predicted spy number of G(n,p) for r revolutionaries and meetings of m.

    Example:
        >>> classify_regime(10**4, 0.5, 12, 10).prediction
        3
        >>> classify_regime(10**4, 0.5, 10**4, 10).regime.value
        '(1+o(1)) r/m'
    """
    if r < 1:
        raise ParameterError("r", r, "must be >= 1")
    if m < 1:
        raise ParameterError("m", m, "must be >= 1")
    om = default_omega(n) if omega is None else omega
    if om <= 0:
        raise ParameterError("omega", om, "must be > 0")
    eta = estimate_eta(n, p)
    elln = ell_n(n, p)
    eta3, eta2, eta6 = 1.0 / 3.0 - eta, 0.5 - eta, 1.0 - eta
    gap = r - m
    pn = p * n
    trivial_lower = min(n, r // m)
    upper = float(min(n, max(gap + 1, 0), spy_upper_bound(n, p, r, m, eps)))
    lower = float(trivial_lower)
    if 0.0 < eta3 <= 1.0 / 3.0 and gap >= 0:
        lower = max(lower, float(min(gap, DENSE_EC_CONSTANT * eta3 * elln) + 1))

    def done(
        regime: Regime, source: str, prediction: float | None, formula: str, reason: str
    ) -> RegimePrediction:
        return RegimePrediction(
            regime=regime,
            source=source,
            prediction=prediction,
            formula=formula,
            eta_hat=eta,
            elln=elln,
            omega=om,
            lower=lower,
            upper=upper,
            etas={"eta": eta, "eta3": eta3, "eta2": eta2, "eta6": eta6},
            band=_band_edges(eta6),
            reason=reason,
        )

    ratio = r / m
    ratio_big = ratio >= om * elln

    if gap < 0:
        return done(Regime.EXACT, "trivial", 0, "0", "m > r: no meeting can form")
    root = math.sqrt(n * math.log(n))
    if root / om < pn < om * root:
        return done(
            Regime.OUT_OF_RANGE, "none", None, "-", "pn inside the sqrt(n log n) window"
        )

    if 0.0 < eta3 <= 1.0 / 3.0:
        if gap <= DENSE_EC_CONSTANT * eta3 * elln:
            return done(
                Regime.EXACT, "dense-ec", gap + 1, "r-m+1", "r-m <= 2.99 eta3 Ln"
            )
        if ratio_big:
            return done(Regime.RATIO, "three-team-upper-bound", ratio, "r/m", "r/m >> Ln")
        return done(Regime.LOG_BAND, "dense-ec", elln, "Theta(Ln)", "r/m = O(Ln)")

    if 0.0 < eta2 <= 1.0 / 6.0:
        if gap <= om:
            return done(Regime.EXACT, "mid-density", gap + 1, "r-m+1", "r-m = O(1)")
        if gap <= MID_EC_CONSTANT * eta2 * elln:
            return done(
                Regime.ASYMPTOTIC_GAP, "mid-density", gap, "r-m", "1 << r-m <= 1.99 eta2 Ln"
            )
        if ratio_big:
            return done(Regime.RATIO, "three-team-upper-bound", ratio, "r/m", "r/m >> Ln")
        return done(Regime.LOG_BAND, "mid-density", elln, "Theta(Ln)", "r/m = O(Ln)")

    if gap <= om:
        sparse_low = math.log(n) ** 3 <= pn and om * pn <= root
        sparse_high = om * root <= pn and pn < (1.0 - eps) * n
        if sparse_low or sparse_high:
            return done(
                Regime.EXACT, "sparse-constant-gap", gap + 1, "r-m+1", "r-m = O(1)"
            )
    elif 0.0 < eta6 < 0.5:
        case = _sparse_gap_case(n, pn, gap, om)
        if case is not None:
            return done(
                Regime.ASYMPTOTIC_GAP,
                "sparse-growing-gap",
                gap,
                "r-m",
                f"r-m >> 1, sparse case ({case})",
            )
    if ratio_big:
        return done(Regime.RATIO, "three-team-upper-bound", ratio, "r/m", "r/m >> Ln")
    return done(Regime.OUT_OF_RANGE, "none", None, "-", "no regime statement applies")


# ---------------------------------------------------------------------------
# e.c. lower bounds
# ---------------------------------------------------------------------------


ECFamily = tuple[ECVariant, int, int]


def ec_families(j_max: int = 1, l_max: int = 1) -> list[ECFamily]:
    """The (variant, l, j) families a lower bound can come from."""
    families: list[ECFamily] = []
    for j in range(1, j_max + 1):
        families.append((ECVariant.EC if j == 1 else ECVariant.EC_J, 2, j))
        families.extend(
            (ECVariant.ONE_EC if j == 1 else ECVariant.ONE_EC_J, size, j)
            for size in range(1, l_max + 1)
        )
    return families


def _allowed(variant: ECVariant, size: int, r: int, m: int) -> int:
    """Largest s the lower-bound implication accepts (size = |A|)."""
    return r - m - size + 1 if variant.has_anchor else r - m


def _scan(
    g: Graph,
    family: ECFamily,
    s_max: int,
    budget: int,
    sampled_seed: int | None,
) -> tuple[int, int]:
    """(largest exact pass, largest exact-or-unrefuted pass), -1 when none."""
    variant, size, j = family
    exact = evidence = -1
    exact_open = True
    for k in range(s_max + 1):
        if exact_open:
            try:
                report = check_ec(g, variant, size, k, j, CheckMode.exact(), budget)
            except BudgetExceededError:
                exact_open = False
            else:
                if report.verdict is not Verdict.HOLDS:
                    break
                exact = evidence = k
                continue
        if sampled_seed is None:
            break
        mode = CheckMode.sampled(EVIDENCE_TRIALS, derive_seed(sampled_seed, "evidence", k))
        if check_ec(g, variant, size, k, j, mode).verdict is Verdict.REFUTED:
            break
        evidence = k
    return exact, evidence


def _implied(family: ECFamily, k: int, r: int, m: int) -> int:
    variant, size, _ = family
    allowed = _allowed(variant, size, r, m)
    if k < 0 or allowed < 0:
        return 0
    return min(k, allowed) + 1


def certified_lower_bound(
    g: Graph,
    r: int,
    m: int,
    families: Sequence[ECFamily] | None = None,
    budget: int = DEFAULT_EC_BUDGET,
    s_max: int | None = None,
) -> tuple[int, str]:
    """Best deterministic lower bound on sigma: trivial or e.c.-implied.

    A graph with an exactly confirmed (2,s)_j-e.c. property forces
    sigma >= s + 1 whenever s <= r - m; (1,l,s)_j-e.c. does so for
    s <= r - m - l + 1.

    Returns:
        ``(bound, source)`` where source is ``trivial`` or the property label.
    """
    if m > r:
        return 0, "trivial"
    best, source = min(g.n, r // m), "trivial"
    limit = r - m if s_max is None else s_max
    for family in families or ec_families():
        exact, _ = _scan(g, family, limit, budget, None)
        bound = _implied(family, exact, r, m)
        if bound > best:
            variant, size, j = family
            best, source = bound, variant.label(size, min(exact, _allowed(variant, size, r, m)), j)
    return min(best, g.n), source


def evidence_lower_bound(
    g: Graph,
    r: int,
    m: int,
    seed: int,
    families: Sequence[ECFamily] | None = None,
    budget: int = DEFAULT_EC_BUDGET,
    s_max: int | None = None,
) -> tuple[int, int]:
    """(certified, evidence) lower bounds; evidence also trusts unrefuted samples."""
    if m > r:
        return 0, 0
    cert = evidence = min(g.n, r // m)
    limit = r - m if s_max is None else s_max
    for index, family in enumerate(families or ec_families()):
        exact, sampled = _scan(g, family, limit, budget, derive_seed(seed, "family", index))
        cert = max(cert, _implied(family, exact, r, m))
        evidence = max(evidence, _implied(family, sampled, r, m))
    return min(cert, g.n), min(evidence, g.n)


# ---------------------------------------------------------------------------
# Threshold scans
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ThresholdRow:
    """One sampled graph of a threshold scan."""

    seed: int
    threshold: int
    curve: tuple[bool, ...]

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation."""
        return {"seed": self.seed, "threshold": self.threshold, "curve": list(self.curve)}


@dataclass(frozen=True, slots=True)
class ThresholdScan:
    """Largest exact (2,s)-e.c. parameter per seed against the predicted value."""

    n: int
    p: float
    prediction: float
    rows: tuple[ThresholdRow, ...]

    @property
    def median(self) -> float:
        return float(statistics.median(row.threshold for row in self.rows))

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation."""
        return {
            "n": self.n,
            "p": self.p,
            "prediction": self.prediction,
            "median": self.median,
            "rows": [row.to_dict() for row in self.rows],
        }


def threshold_of(g: Graph, s_max: int, budget: int = DEFAULT_EC_BUDGET) -> ThresholdRow:
    """Pass/fail curve of exact (2,s)-e.c. for s = 0..s_max (seed left at 0)."""
    curve = []
    for k in range(s_max + 1):
        report = check_ec(g, ECVariant.EC, 2, k, 1, CheckMode.exact(), budget)
        curve.append(report.verdict is Verdict.HOLDS)
    threshold = -1
    for k, passed in enumerate(curve):
        if not passed:
            break
        threshold = k
    return ThresholdRow(seed=0, threshold=threshold, curve=tuple(curve))


def ec_threshold_scan(
    n: int,
    p: float,
    seeds: Iterable[int],
    s_max: int,
    budget: int = DEFAULT_EC_BUDGET,
) -> ThresholdScan:
    """For each seeded G(n,p), the largest s with exact (2,s)-e.c.

    This is a trend report: the prediction 2.99 * eta3 * Ln is asymptotic
    and nothing is asserted against it.

    Raises:
        BudgetExceededError: If some exact check is over budget.
    """
    rows = []
    for seed in seeds:
        row = threshold_of(sample_gnp(GnpParams(n, p, seed)), s_max, budget)
        rows.append(ThresholdRow(seed=seed, threshold=row.threshold, curve=row.curve))
        logger.debug("threshold scan n=%d seed=%d: %d", n, seed, row.threshold)
    if not rows:
        raise ParameterError("seeds", (), "need at least one seed")
    return ThresholdScan(n=n, p=p, prediction=predicted_ec_threshold(n, p), rows=tuple(rows))


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


def _fixed(x: float | None) -> float | None:
    return None if x is None else round(float(x), 6)


@dataclass(frozen=True, slots=True)
class SweepRow:
    """One (cell, trial) result of a sweep; empty columns are None."""

    n: int
    p: float
    r: int
    m: int
    regime: str
    prediction: float | None
    cert_lb: int | None
    evidence_lb: int | None
    exact_sigma: int | None
    spy_survival: float | None
    rev_win: float | None
    seed: int
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        """Row with floats rounded to a fixed precision."""
        return {
            "n": self.n,
            "p": _fixed(self.p),
            "r": self.r,
            "m": self.m,
            "regime": self.regime,
            "prediction": _fixed(self.prediction),
            "cert_lb": self.cert_lb,
            "evidence_lb": self.evidence_lb,
            "exact_sigma": self.exact_sigma,
            "spy_survival": _fixed(self.spy_survival),
            "rev_win": _fixed(self.rev_win),
            "seed": self.seed,
            "error": self.error,
        }


@dataclass(frozen=True, slots=True)
class SweepBudgets:
    """Cost limits and matching-set settings used by every sweep cell."""

    ec: int = SWEEP_EC_BUDGET
    solver: int = DEFAULT_SOLVER_BUDGET
    retries: int = 10
    repairs: int = 200


def _survival_spies(spec: SweepSpec, n: int, p: float, r: int, m: int) -> int:
    name, _ = parse_strategy_spec(spec.spy)
    if name == "three-teams" and 0.0 < p < 1.0 and n >= 2:
        return min(n, spy_team_parameters(n, p, spec.eps, r, m).total)
    return min(n, max(r - m + 1, 0))


def _win_rate(
    g: Graph,
    spec: SweepSpec,
    config: GameConfig,
    seed: int,
    p: float,
    budgets: SweepBudgets,
) -> tuple[float, float]:
    """(spy survival rate, revolutionary win rate) over ``spec.games`` games."""
    survived = 0
    for game in range(spec.games):
        spies = build_spy_strategy(
            spec.spy, p=p, eps=spec.eps, retries=budgets.retries, repairs=budgets.repairs
        )
        result = play(g, config, build_rev_strategy(spec.rev), spies, derive_seed(seed, "game", game))
        survived += result.winner is Outcome.SPIES_SURVIVED
    rate = survived / spec.games
    return rate, 1.0 - rate


def run_cell(
    spec: SweepSpec,
    cell_index: int,
    trial: int,
    budgets: SweepBudgets | None = None,
) -> SweepRow:
    """Evaluate one (cell, trial); domain errors end up in the row."""
    budgets = budgets or SweepBudgets()
    n, p, r, m = spec.cells()[cell_index]
    seed = derive_seed(spec.seed, "graph", cell_index, trial)
    regime, prediction = "out-of-range", None
    cert = evidence = exact = None
    survival = rev_win = None
    try:
        if n >= 2 and 0.0 < p < 1.0:
            pred = classify_regime(n, p, r, m, spec.omega, spec.eps)
            regime, prediction = str(pred.regime), pred.prediction
        g = sample_gnp(GnpParams(n, p, seed))
        families = ec_families(spec.j_max, spec.l_max)
        if CellMethod.CERTIFIED in spec.methods or CellMethod.SIMULATE in spec.methods:
            cert, evidence = evidence_lower_bound(
                g, r, m, seed, families, budgets.ec, min(spec.s_max, max(r - m, 0))
            )
        if CellMethod.EXACT in spec.methods:
            try:
                exact = spy_number_exact(g, r, m, budgets.solver)
            except BudgetExceededError as e:
                logger.debug("cell %d trial %d: %s", cell_index, trial, e)
        if CellMethod.SIMULATE in spec.methods:
            strong = GameConfig(r, m, _survival_spies(spec, n, p, r, m), spec.horizon)
            survival, _ = _win_rate(g, spec, strong, seed, p, budgets)
            weak = GameConfig(r, m, max((cert or 0) - 1, 0), spec.horizon)
            _, rev_win = _win_rate(g, spec, weak, derive_seed(seed, "weak"), p, budgets)
    except RevSpyError as e:
        logger.warning("cell %d trial %d failed: %s", cell_index, trial, e)
        return SweepRow(n, p, r, m, regime, prediction, cert, evidence, exact, survival, rev_win, seed, str(e))
    return SweepRow(n, p, r, m, regime, prediction, cert, evidence, exact, survival, rev_win, seed)


def run_sweep(
    spec: SweepSpec,
    executor: ExecutorPort | None = None,
    progress: ProgressReporter | None = None,
    budgets: SweepBudgets | None = None,
) -> list[SweepRow]:
    """Run every (cell, trial) job and return rows in grid order.

    Jobs are independent; with an executor they run concurrently and are
    merged back in submission order, so the output does not depend on the
    number of workers.
    """
    progress = progress or NullProgressReporter()
    jobs = [(c, t) for c in range(len(spec.cells())) for t in range(spec.trials)]
    callback = progress.start_task("sweep", len(jobs))
    rows: list[SweepRow] = []
    if executor is None:
        for done, (c, t) in enumerate(jobs, start=1):
            rows.append(run_cell(spec, c, t, budgets))
            callback(done, len(jobs))
    else:
        futures = [executor.submit(run_cell, spec, c, t, budgets) for c, t in jobs]
        for done, future in enumerate(futures, start=1):
            row = future.result()
            assert isinstance(row, SweepRow)
            rows.append(row)
            callback(done, len(jobs))
    progress.finish_task("sweep")
    logger.info("sweep finished: %d rows", len(rows))
    return rows
