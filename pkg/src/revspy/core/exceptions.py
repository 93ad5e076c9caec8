"""Domain exceptions for revspy.

All library errors inherit from RevSpyError, allowing callers to catch
any library exception with a single except clause. Each exception provides
a recovery_hint property with guidance on resolving the error.

Finite-size shortfalls of the random-graph properties (a Hall matching
that cannot be formed, an e.c. witness that does not exist) are not
exceptions: strategies record them as trace events and keep playing.
"""

from __future__ import annotations

from typing import TYPE_CHECKING


if TYPE_CHECKING:
    from pathlib import Path


class RevSpyError(Exception):
    """Base class for all revspy exceptions.

    Catch this to handle any error from the library.
    """

    @property
    def recovery_hint(self) -> str | None:
        """Optional guidance on how to resolve this error."""
        return None


class ParameterError(RevSpyError, ValueError):
    """Raised when a numeric parameter is outside its domain.

    Attributes:
        name: The parameter name (e.g. "p", "beta").
        value: The rejected value.
        reason: Why the value is rejected.
    """

    def __init__(self, name: str, value: object, reason: str) -> None:
        self.name = name
        self.value = value
        self.reason = reason
        super().__init__(f"Invalid {name}={value!r}: {reason}")

    @property
    def recovery_hint(self) -> str:
        """Repeat the constraint that was violated."""
        return f"Check {self.name}: {self.reason}"


class InvalidVertexError(RevSpyError, IndexError):
    """Raised when a vertex id is outside 0..n-1.

    Attributes:
        vertex: The offending vertex id.
        n: Vertex count of the graph.
    """

    def __init__(self, vertex: int, n: int) -> None:
        self.vertex = vertex
        self.n = n
        super().__init__(f"Vertex {vertex} out of range for graph on {n} vertices")

    @property
    def recovery_hint(self) -> str:
        """Name the valid range."""
        return f"Use vertex ids between 0 and {self.n - 1}"


class GraphFormatError(RevSpyError):
    """Raised when edge-list text cannot be parsed.

    Attributes:
        line: 1-based line number where parsing failed (if known).
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")

    @property
    def recovery_hint(self) -> str:
        """Describe the edge-list format."""
        return (
            "Edge lists start with 'n m' followed by m lines 'u v' "
            "with 0 <= u < v < n, one edge per line"
        )


class InvalidQueryError(RevSpyError, ValueError):
    """Raised when an e.c. query is malformed (overlapping sets, bad sizes)."""

    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(f"Invalid e.c. query: {reason}")

    @property
    def recovery_hint(self) -> str:
        """Remind the disjointness requirement."""
        return "A, B and the distinguished vertex must be pairwise disjoint"


class BudgetExceededError(RevSpyError):
    """Raised when an exhaustive computation would exceed its budget.

    Attributes:
        what: Description of the refused computation.
        estimate: Estimated cost (adjacency tests or states).
        budget: The configured budget.
    """

    def __init__(self, what: str, estimate: int, budget: int) -> None:
        self.what = what
        self.estimate = estimate
        self.budget = budget
        super().__init__(
            f"Refusing {what}: estimated cost {estimate:,} exceeds budget {budget:,}"
        )

    @property
    def recovery_hint(self) -> str:
        """Suggest sampling or a larger budget."""
        return (
            "Use sampled mode, shrink the instance, or raise the budget "
            "(--budget or REVSPY_EC_BUDGET / REVSPY_SOLVER_BUDGET)"
        )


class RuleViolationError(RevSpyError):
    """Raised when a strategy issues an illegal move.

    Attributes:
        team: "revolutionaries" or "spies".
        token: Index of the offending token within its team.
        source: Vertex the token occupied.
        target: Vertex the token tried to reach.
        round: Round in which the violation happened.
    """

    def __init__(
        self,
        team: str,
        token: int,
        source: int,
        target: int,
        round_no: int,
        reason: str = "not adjacent",
    ) -> None:
        self.team = team
        self.token = token
        self.source = source
        self.target = target
        self.round = round_no
        self.reason = reason
        super().__init__(
            f"Round {round_no}: {team} token {token} cannot move {source} -> {target} "
            f"({reason})"
        )

    @property
    def recovery_hint(self) -> str:
        """Explain what a legal move is."""
        return "Each token may stay or move along one edge per round"


class TraceFormatError(RevSpyError):
    """Raised when a trace cannot be decoded or does not replay."""

    @property
    def recovery_hint(self) -> str:
        """Suggest regenerating the trace."""
        return "Regenerate the trace with 'revspy play' against the same graph"


class SweepSpecError(RevSpyError):
    """Raised when a sweep spec file cannot be parsed.

    Attributes:
        path: Path to the spec file (if read from disk).
        line: Line number where the error occurred (if available).
    """

    def __init__(
        self,
        message: str,
        path: Path | None = None,
        line: int | None = None,
    ) -> None:
        self.path = path
        self.line = line
        super().__init__(message)

    @property
    def recovery_hint(self) -> str:
        """Point at the offending line."""
        name = self.path.name if self.path is not None else "the sweep spec"
        if self.line:
            return f"Check {name} at line {self.line}"
        return f"Check {name} for missing or malformed keys"


class StrategySpecError(RevSpyError, ValueError):
    """Raised when a strategy name or parameter string is not recognised.

    Attributes:
        spec: The strategy spec string as given.
        reason: What is wrong with it.
        available: Known strategy names for this team.
    """

    def __init__(
        self, spec: str, reason: str, available: list[str] | None = None
    ) -> None:
        self.spec = spec
        self.reason = reason
        self.available = available if available is not None else []
        super().__init__(f"Bad strategy spec '{spec}': {reason}")

    @property
    def recovery_hint(self) -> str:
        """List the known names."""
        if self.available:
            return f"Available strategies: {', '.join(self.available)}"
        return "Use the form name:key=value,key=value"
