"""Unit tests for the regime classifier, e.c. lower bounds and sweeps."""

from __future__ import annotations

import math

import pytest

from revspy.core.graph import complete_graph, cycle_graph, path_graph, petersen_graph
from revspy.core.models import CellMethod, Regime, SweepSpec


@pytest.mark.experiments
@pytest.mark.tra("Experiments.ClassifyRegime")
@pytest.mark.tier(1)
class TestClassifyRegime:
    """Tests for classify_regime gates at n = 10^4, p = 1/2 and friends."""

    def test_default_omega(self) -> None:
        """ln ln n, floored at 1."""
        from revspy.core.experiments import default_omega

        assert default_omega(10**4) == pytest.approx(math.log(math.log(10**4)))
        assert default_omega(10) == 1.0
        assert default_omega(2) == 1.0

    def test_dense_constant_gap_is_exact(self) -> None:
        """r - m small against Ln pins sigma to r - m + 1."""
        from revspy.core.experiments import classify_regime

        pred = classify_regime(10**4, 0.5, 12, 10)
        assert pred.regime is Regime.EXACT
        assert pred.source == "dense-ec"
        assert pred.prediction == 3
        assert pred.lower == pred.upper == 3

    def test_dense_log_band(self) -> None:
        """A gap beyond the e.c. range with r/m = O(Ln) predicts Theta(Ln)."""
        from revspy.core.experiments import classify_regime

        pred = classify_regime(10**4, 0.5, 40, 10)
        assert pred.regime is Regime.LOG_BAND
        assert pred.prediction == pytest.approx(math.log(10**4) / math.log(2))
        assert pred.lower <= pred.upper

    def test_ratio_regime(self) -> None:
        """r/m far above Ln predicts r/m."""
        from revspy.core.experiments import classify_regime

        pred = classify_regime(10**4, 0.5, 10**4, 10)
        assert pred.regime is Regime.RATIO
        assert pred.prediction == pytest.approx(1000.0)

    def test_sqrt_window_is_out_of_range(self) -> None:
        """pn near sqrt(n log n) has no statement."""
        from revspy.core.experiments import classify_regime

        pred = classify_regime(10**4, 0.03, 12, 10)
        assert pred.regime is Regime.OUT_OF_RANGE
        assert pred.prediction is None

    def test_no_meeting_possible(self) -> None:
        """m > r predicts zero spies."""
        from revspy.core.experiments import classify_regime

        pred = classify_regime(10**4, 0.5, 5, 10)
        assert pred.regime is Regime.EXACT
        assert pred.source == "trivial"
        assert pred.prediction == 0

    def test_mid_density(self) -> None:
        """At eta just above 1/3 the gap decides between exact and (1+o(1))(r-m)."""
        from revspy.core.experiments import classify_regime

        p = 10**-2.72
        exact = classify_regime(10**8, p, 12, 10)
        assert exact.source == "mid-density"
        assert exact.regime is Regime.EXACT
        assert exact.prediction == 3

        gap = classify_regime(10**8, p, 110, 10)
        assert gap.regime is Regime.ASYMPTOTIC_GAP
        assert gap.prediction == 100

    def test_reported_exponents(self) -> None:
        """The prediction carries eta-hat and the per-parametrisation exponents."""
        from revspy.core.experiments import classify_regime

        pred = classify_regime(10**4, 0.5, 12, 10)
        eta = math.log(2) / math.log(10**4)
        assert pred.eta_hat == pytest.approx(eta)
        assert pred.etas["eta3"] == pytest.approx(1 / 3 - eta)
        assert pred.to_dict()["regime"] == "exact r-m+1"

    @pytest.mark.parametrize(
        ("r", "m", "omega"),
        [(0, 1, None), (3, 0, None), (3, 2, 0.0), (3, 2, -1.0)],
    )
    def test_bad_parameters(self, r: int, m: int, omega: float | None) -> None:
        """r, m >= 1 and omega > 0."""
        from revspy.core.exceptions import ParameterError
        from revspy.core.experiments import classify_regime

        with pytest.raises(ParameterError):
            classify_regime(10**4, 0.5, r, m, omega)


@pytest.mark.experiments
@pytest.mark.tra("Experiments.LowerBounds")
@pytest.mark.tier(2)
class TestLowerBounds:
    """Tests for certified and evidence lower bounds."""

    def test_families(self) -> None:
        """One (2,s) family per radius plus one anchored family per size."""
        from revspy.core.experiments import ec_families
        from revspy.core.models import ECVariant

        assert ec_families() == [(ECVariant.EC, 2, 1), (ECVariant.ONE_EC, 1, 1)]
        assert ec_families(2, 2) == [
            (ECVariant.EC, 2, 1),
            (ECVariant.ONE_EC, 1, 1),
            (ECVariant.ONE_EC, 2, 1),
            (ECVariant.EC_J, 2, 2),
            (ECVariant.ONE_EC_J, 1, 2),
            (ECVariant.ONE_EC_J, 2, 2),
        ]

    def test_triangle_free_graph_falls_back_to_trivial(self) -> None:
        """Adjacent Petersen vertices share no neighbour, so no e.c. bound applies."""
        from revspy.core.experiments import certified_lower_bound

        assert certified_lower_bound(petersen_graph(), 4, 2) == (2, "trivial")

    def test_complete_graph(self) -> None:
        """K6 is (2,0)-e.c. only, which adds nothing to r//m."""
        from revspy.core.experiments import certified_lower_bound

        assert certified_lower_bound(complete_graph(6), 3, 2) == (1, "trivial")

    def test_vacuous(self) -> None:
        """m > r gives 0."""
        from revspy.core.experiments import certified_lower_bound, evidence_lower_bound

        assert certified_lower_bound(complete_graph(4), 1, 2) == (0, "trivial")
        assert evidence_lower_bound(complete_graph(4), 1, 2, seed=0) == (0, 0)

    def test_evidence_dominates_certified(self, dense_gnp) -> None:
        """Trusting unrefuted samples can only raise the bound."""
        from revspy.core.experiments import certified_lower_bound, evidence_lower_bound

        cert, evidence = evidence_lower_bound(dense_gnp, 6, 2, seed=4, s_max=3)
        assert evidence >= cert
        assert cert == certified_lower_bound(dense_gnp, 6, 2, s_max=3)[0]

    @pytest.mark.tier(3)
    @pytest.mark.parametrize("g", [cycle_graph(5), path_graph(4), complete_graph(4)])
    def test_certified_bound_never_exceeds_exact(self, g) -> None:
        """cert <= sigma <= min(n, r - m + 1) on solvable graphs."""
        from revspy.core.experiments import certified_lower_bound
        from revspy.core.solver import spy_number_exact

        bound, _ = certified_lower_bound(g, 3, 2)
        sigma = spy_number_exact(g, 3, 2)
        assert bound <= sigma <= min(g.n, 2)


@pytest.mark.experiments
@pytest.mark.tra("Experiments.Threshold")
@pytest.mark.tier(2)
class TestThresholds:
    """Tests for (2,s)-e.c. threshold curves."""

    def test_threshold_of_complete_graph(self) -> None:
        """K5 is (2,0)-e.c. and nothing more."""
        from revspy.core.experiments import threshold_of

        row = threshold_of(complete_graph(5), 2)
        assert row.curve == (True, False, False)
        assert row.threshold == 0
        assert row.to_dict() == {"seed": 0, "threshold": 0, "curve": [True, False, False]}

    def test_threshold_of_petersen(self) -> None:
        """No curve point passes: threshold -1."""
        from revspy.core.experiments import threshold_of

        row = threshold_of(petersen_graph(), 1)
        assert row.threshold == -1
        assert not any(row.curve)

    def test_scan(self) -> None:
        """One row per seed, in seed order, with the predicted value attached."""
        from revspy.core.experiments import ec_threshold_scan
        from revspy.core.properties import predicted_ec_threshold

        scan = ec_threshold_scan(12, 0.5, [1, 2], 1)
        assert [row.seed for row in scan.rows] == [1, 2]
        assert all(len(row.curve) == 2 for row in scan.rows)
        assert scan.prediction == pytest.approx(predicted_ec_threshold(12, 0.5))
        data = scan.to_dict()
        assert data["median"] == scan.median
        assert len(data["rows"]) == 2

    def test_scan_needs_seeds(self) -> None:
        """An empty seed list is a parameter error."""
        from revspy.core.exceptions import ParameterError
        from revspy.core.experiments import ec_threshold_scan

        with pytest.raises(ParameterError, match="seeds"):
            ec_threshold_scan(12, 0.5, [], 1)


@pytest.mark.experiments
@pytest.mark.tra("Experiments.Sweep")
@pytest.mark.tier(2)
class TestSweeps:
    """Tests for run_cell and run_sweep."""

    def test_row_rounding(self) -> None:
        """Floats are rounded to six places, None stays None."""
        from revspy.core.experiments import SWEEP_COLUMNS, SweepRow

        row = SweepRow(8, 0.1234567891, 3, 2, "exact r-m+1", 3, 1, 1, None, None, None, 7)
        data = row.to_dict()
        assert data["p"] == 0.123457
        assert data["prediction"] == 3.0
        assert data["exact_sigma"] is None
        assert tuple(data) == SWEEP_COLUMNS

    def test_cell_records_errors(self) -> None:
        """A bad strategy spec fails the cell, not the sweep."""
        from revspy.core.experiments import run_cell

        spec = SweepSpec(
            n=(8,), p=(0.5,), r=(3,), m=(2,), methods=(CellMethod.SIMULATE,), spy="nope"
        )
        row = run_cell(spec, 0, 0)
        assert row.error is not None
        assert "nope" in row.error
        assert row.spy_survival is None

    def test_simulated_cell(self) -> None:
        """The default spies occupy every vertex of a small graph and survive."""
        from revspy.core.experiments import run_cell

        spec = SweepSpec(
            n=(8,), p=(0.5,), r=(3,), m=(2,), methods=(CellMethod.SIMULATE,), horizon=20
        )
        row = run_cell(spec, 0, 0)
        assert row.error is None
        assert row.spy_survival == 1.0
        assert row.rev_win is not None
        assert row.cert_lb is not None

    def test_degenerate_density(self) -> None:
        """p = 1 has no regime statement but still gets bounds."""
        from revspy.core.experiments import run_cell

        row = run_cell(SweepSpec(n=(8,), p=(1.0,), r=(3,), m=(2,)), 0, 0)
        assert row.regime == "out-of-range"
        assert row.prediction is None
        assert row.error is None
        assert row.cert_lb is not None

    def test_exact_cell(self) -> None:
        """The exact method fills exact_sigma within the trivial bounds."""
        from revspy.core.experiments import run_cell

        spec = SweepSpec(n=(6,), p=(0.5,), r=(3,), m=(2,), methods=(CellMethod.EXACT,))
        row = run_cell(spec, 0, 0)
        assert isinstance(row.exact_sigma, int)
        assert 1 <= row.exact_sigma <= 2
        assert row.cert_lb is None

    def test_cell_seeds_are_distinct(self) -> None:
        """Each (cell, trial) samples its own graph seed."""
        from revspy.core.experiments import run_cell

        spec = SweepSpec(n=(8,), p=(0.5,), r=(3,), m=(2,), trials=2)
        assert run_cell(spec, 0, 0).seed != run_cell(spec, 0, 1).seed

    def test_sweep_order_and_progress(self) -> None:
        """Rows follow grid order and the reporter sees every job."""
        from revspy.core.experiments import run_sweep

        calls: list[tuple[int, int]] = []

        class Recorder:
            def start_task(self, name: str, total: int):
                return lambda done, total: calls.append((done, total))

            def finish_task(self, name: str) -> None:
                calls.append((-1, -1))

        spec = SweepSpec(n=(6, 8), p=(0.5,), r=(3,), m=(2,), trials=2)
        rows = run_sweep(spec, progress=Recorder())
        assert [row.n for row in rows] == [6, 6, 8, 8]
        assert calls == [(1, 4), (2, 4), (3, 4), (4, 4), (-1, -1)]

    def test_executors_agree(self) -> None:
        """Thread pool and synchronous runs give identical rows."""
        from revspy.adapters.executor import SynchronousExecutor, ThreadPoolExecutorAdapter
        from revspy.core.experiments import run_sweep

        spec = SweepSpec(n=(6, 8), p=(0.3, 0.6), r=(3,), m=(2,), trials=2, seed=11)
        serial = run_sweep(spec)
        assert run_sweep(spec, executor=SynchronousExecutor()) == serial
        with ThreadPoolExecutorAdapter(max_workers=3) as pool:
            assert run_sweep(spec, executor=pool) == serial
