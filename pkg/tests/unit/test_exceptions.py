"""Unit tests for domain exception hierarchy."""

from pathlib import Path

import pytest


@pytest.mark.core
@pytest.mark.tra("Domain.Exceptions")
@pytest.mark.tier(0)
class TestRevSpyError:
    """Tests for base exception class."""

    def test_is_exception_subclass(self) -> None:
        """RevSpyError should be an Exception subclass."""
        from revspy.core.exceptions import RevSpyError

        assert issubclass(RevSpyError, Exception)

    def test_recovery_hint_returns_none_by_default(self) -> None:
        """Base exception should return None for recovery_hint."""
        from revspy.core.exceptions import RevSpyError

        err = RevSpyError("something went wrong")
        assert err.recovery_hint is None

    def test_every_domain_error_derives_from_base(self) -> None:
        """All revspy errors share one root so the CLI can catch them together."""
        from revspy.core.exceptions import (
            BudgetExceededError,
            GraphFormatError,
            InvalidQueryError,
            InvalidVertexError,
            ParameterError,
            RevSpyError,
            RuleViolationError,
            StrategySpecError,
            SweepSpecError,
            TraceFormatError,
        )

        for cls in (
            BudgetExceededError,
            GraphFormatError,
            InvalidQueryError,
            InvalidVertexError,
            ParameterError,
            RuleViolationError,
            StrategySpecError,
            SweepSpecError,
            TraceFormatError,
        ):
            assert issubclass(cls, RevSpyError)


@pytest.mark.core
@pytest.mark.tra("Domain.Exceptions")
@pytest.mark.tier(0)
class TestParameterError:
    """Tests for ParameterError."""

    def test_is_value_error(self) -> None:
        """ParameterError should also be a ValueError."""
        from revspy.core.exceptions import ParameterError

        assert issubclass(ParameterError, ValueError)

    def test_message_names_parameter_and_value(self) -> None:
        """Message should read 'Invalid name=value: reason'."""
        from revspy.core.exceptions import ParameterError

        err = ParameterError("p", 1.5, "must lie in [0, 1]")
        assert str(err) == "Invalid p=1.5: must lie in [0, 1]"
        assert err.name == "p"
        assert err.value == 1.5
        assert err.reason == "must lie in [0, 1]"

    def test_recovery_hint_repeats_constraint(self) -> None:
        """Hint should repeat the violated constraint."""
        from revspy.core.exceptions import ParameterError

        err = ParameterError("r", 0, "must be >= 1")
        assert err.recovery_hint == "Check r: must be >= 1"


@pytest.mark.core
@pytest.mark.tra("Domain.Exceptions")
@pytest.mark.tier(0)
class TestInvalidVertexError:
    """Tests for InvalidVertexError."""

    def test_is_index_error(self) -> None:
        """InvalidVertexError should also be an IndexError."""
        from revspy.core.exceptions import InvalidVertexError

        assert issubclass(InvalidVertexError, IndexError)

    def test_stores_vertex_and_n(self) -> None:
        """Exception should store the vertex and the vertex count."""
        from revspy.core.exceptions import InvalidVertexError

        err = InvalidVertexError(7, 5)
        assert err.vertex == 7
        assert err.n == 5
        assert "7" in str(err)

    def test_recovery_hint_gives_valid_range(self) -> None:
        """Hint should name the largest valid id."""
        from revspy.core.exceptions import InvalidVertexError

        assert "0 and 4" in InvalidVertexError(7, 5).recovery_hint


@pytest.mark.core
@pytest.mark.tra("Domain.Exceptions")
@pytest.mark.tier(0)
class TestGraphFormatError:
    """Tests for GraphFormatError."""

    def test_message_prefixed_with_line(self) -> None:
        """A known line number should prefix the message."""
        from revspy.core.exceptions import GraphFormatError

        err = GraphFormatError("self-loop at vertex 2", 3)
        assert str(err) == "line 3: self-loop at vertex 2"
        assert err.line == 3

    def test_message_without_line(self) -> None:
        """Without a line number the message is left alone."""
        from revspy.core.exceptions import GraphFormatError

        err = GraphFormatError("empty input")
        assert str(err) == "empty input"
        assert err.line is None

    def test_recovery_hint_describes_format(self) -> None:
        """Hint should describe the edge-list layout."""
        from revspy.core.exceptions import GraphFormatError

        assert "n m" in GraphFormatError("bad").recovery_hint


@pytest.mark.core
@pytest.mark.tra("Domain.Exceptions")
@pytest.mark.tier(0)
class TestBudgetExceededError:
    """Tests for BudgetExceededError."""

    def test_stores_estimate_and_budget(self) -> None:
        """Exception should keep what was refused and the numbers."""
        from revspy.core.exceptions import BudgetExceededError

        err = BudgetExceededError("exact solve", 5000, 100)
        assert err.what == "exact solve"
        assert err.estimate == 5000
        assert err.budget == 100
        assert str(err) == "Refusing exact solve: estimated cost 5,000 exceeds budget 100"

    def test_recovery_hint_mentions_sampling_and_budget(self) -> None:
        """Hint should offer sampling or a larger budget."""
        from revspy.core.exceptions import BudgetExceededError

        hint = BudgetExceededError("x", 2, 1).recovery_hint
        assert "sampled" in hint
        assert "--budget" in hint


@pytest.mark.core
@pytest.mark.tra("Domain.Exceptions")
@pytest.mark.tier(0)
class TestRuleViolationError:
    """Tests for RuleViolationError."""

    def test_stores_move_details(self) -> None:
        """The offending token, endpoints and round should be kept."""
        from revspy.core.exceptions import RuleViolationError

        err = RuleViolationError("spies", 2, 0, 3, 4)
        assert (err.team, err.token, err.source, err.target, err.round) == (
            "spies",
            2,
            0,
            3,
            4,
        )
        assert err.reason == "not adjacent"
        assert "Round 4" in str(err)

    def test_recovery_hint_explains_legal_moves(self) -> None:
        """Hint should describe what a legal move is."""
        from revspy.core.exceptions import RuleViolationError

        assert "one edge" in RuleViolationError("spies", 0, 0, 1, 2).recovery_hint


@pytest.mark.core
@pytest.mark.tra("Domain.Exceptions")
@pytest.mark.tier(0)
class TestSweepSpecError:
    """Tests for SweepSpecError."""

    def test_recovery_hint_points_at_line(self) -> None:
        """Hint should name the file and the line."""
        from revspy.core.exceptions import SweepSpecError

        err = SweepSpecError("bad", Path("grid.txt"), 4)
        assert err.recovery_hint == "Check grid.txt at line 4"

    def test_recovery_hint_without_line(self) -> None:
        """Without a line the hint asks for missing keys."""
        from revspy.core.exceptions import SweepSpecError

        err = SweepSpecError("missing grid key(s): n")
        assert "the sweep spec" in err.recovery_hint


@pytest.mark.core
@pytest.mark.tra("Domain.Exceptions")
@pytest.mark.tier(0)
class TestStrategySpecError:
    """Tests for StrategySpecError."""

    def test_available_defaults_to_empty_list(self) -> None:
        """Available strategies should default to an empty list."""
        from revspy.core.exceptions import StrategySpecError

        err = StrategySpecError("x", "unknown")
        assert err.available == []
        assert "name:key=value" in err.recovery_hint

    def test_recovery_hint_lists_available(self) -> None:
        """Hint should list the known strategy names."""
        from revspy.core.exceptions import StrategySpecError

        err = StrategySpecError("x", "unknown", ["follow", "static"])
        assert err.recovery_hint == "Available strategies: follow, static"


@pytest.mark.core
@pytest.mark.tra("Domain.Exceptions")
@pytest.mark.tier(0)
class TestQueryAndTraceErrors:
    """Tests for InvalidQueryError and TraceFormatError."""

    def test_invalid_query_is_value_error(self) -> None:
        """InvalidQueryError should also be a ValueError."""
        from revspy.core.exceptions import InvalidQueryError

        err = InvalidQueryError("A and B must be disjoint")
        assert isinstance(err, ValueError)
        assert "disjoint" in err.recovery_hint

    def test_trace_format_hint(self) -> None:
        """TraceFormatError should suggest regenerating the trace."""
        from revspy.core.exceptions import TraceFormatError

        assert "revspy play" in TraceFormatError("bad").recovery_hint
