"""Port interfaces for the game engine and the experiment harness.

Ports define contracts that strategies and adapters implement. The core
domain depends only on these protocols, never on concrete implementations.
"""

from __future__ import annotations

from collections.abc import Callable
from typing import TYPE_CHECKING, Protocol, runtime_checkable


if TYPE_CHECKING:
    from concurrent.futures import Future

    from revspy.core.graph import Graph
    from revspy.core.models import GameConfig, GameState, TraceEvent
    from revspy.core.rng import SplitMix64


ProgressCallback = Callable[[int, int], None]


@runtime_checkable
class RevolutionaryStrategy(Protocol):
    """Decides revolutionary placement and moves.

    The engine calls :meth:`place` once, then :meth:`move` at the start of
    every round. Each call sees the full state. The returned tuple is
    token-indexed: entry i is the target vertex of revolutionary i.

    Example:
        >>> class Stay:
        ...     name = "stay"
        ...     def place(self, g, config, rng):
        ...         return (0,) * config.r
        ...     def move(self, g, state):
        ...         return state.rev
        ...     def pop_events(self):
        ...         return []
    """

    name: str

    def place(self, g: Graph, config: GameConfig, rng: SplitMix64) -> tuple[int, ...]:
        """Initial positions of the r revolutionaries.

        Args:
            g: The board.
            config: Game parameters.
            rng: Private randomness stream of the revolutionary team.
        """
        ...

    def move(self, g: Graph, state: GameState) -> tuple[int, ...]:
        """Targets for every revolutionary in the current round."""
        ...

    def pop_events(self) -> list[TraceEvent]:
        """Shortfall events raised since the previous call."""
        ...


@runtime_checkable
class SpyStrategy(Protocol):
    """Decides spy placement and moves.

    Spies always act second: :meth:`place` receives the revolutionary
    placement and :meth:`move` receives a state whose ``rev`` already holds
    the committed revolutionary moves of the round.
    """

    name: str

    def place(
        self,
        g: Graph,
        config: GameConfig,
        rev: tuple[int, ...],
        rng: SplitMix64,
    ) -> tuple[int, ...]:
        """Initial positions of the s spies."""
        ...

    def move(self, g: Graph, state: GameState) -> tuple[int, ...]:
        """Targets for every spy in the current round."""
        ...

    def pop_events(self) -> list[TraceEvent]:
        """Shortfall events raised since the previous call."""
        ...


@runtime_checkable
class ProgressReporter(Protocol):
    """Reports sweep progress to the user.

    The core domain uses this to report progress without depending
    on any specific UI library.
    """

    def start_task(self, name: str, total: int) -> ProgressCallback:
        """Start tracking a task.

        Args:
            name: Human-readable name for the task.
            total: Number of work units (sweep cells or trials).

        Returns:
            A ProgressCallback to call with (completed, total).
        """
        ...

    def finish_task(self, name: str) -> None:
        """Mark a task as complete.

        Args:
            name: The task name passed to start_task().
        """
        ...


class NullProgressReporter:
    """A ProgressReporter that produces no output.

    Used as the default when no progress reporting is desired.
    """

    def start_task(self, name: str, total: int) -> ProgressCallback:  # noqa: ARG002
        """Return a no-op callback."""
        return lambda _completed, _total: None

    def finish_task(self, name: str) -> None:
        """Do nothing."""
        _ = name


@runtime_checkable
class ExecutorPort(Protocol):
    """Executor for parallel task execution.

    Abstracts over concurrent.futures executors so that sweeps and sampled
    checks can fan out without the core importing a thread pool.
    """

    def submit(
        self, fn: Callable[..., object], *args: object, **kwargs: object
    ) -> Future[object]:
        """Submit a function for execution.

        Args:
            fn: Function to execute.
            *args: Positional arguments to pass to fn.
            **kwargs: Keyword arguments to pass to fn.

        Returns:
            Future representing the pending result.
        """
        ...

    def __enter__(self) -> ExecutorPort:
        """Enter context manager."""
        ...

    def __exit__(
        self, exc_type: object, exc_val: object, exc_tb: object
    ) -> object | None:
        """Exit context manager."""
        ...
