"""Spy strategies: the three-team matching strategy and simple baselines."""

from __future__ import annotations

import logging
from collections import Counter
from itertools import cycle, islice
from typing import TYPE_CHECKING

from revspy.core.exceptions import ParameterError
from revspy.core.graph import shortest_step
from revspy.core.models import EventKind, Team, TraceEvent
from revspy.core.properties import build_matching_set, maximum_matching
from revspy.core.strategies.params import spy_team_parameters


if TYPE_CHECKING:
    from revspy.core.graph import Graph
    from revspy.core.models import GameConfig, GameState, SpyTeamParams
    from revspy.core.rng import SplitMix64


logger = logging.getLogger(__name__)


def degree_order(g: Graph) -> list[int]:
    """Vertices by decreasing degree, ties by id."""
    return sorted(g.vertices(), key=lambda v: (-g.degree(v), v))


def meeting_vertices(rev: tuple[int, ...], m: int) -> list[int]:
    """Sorted vertices holding at least m of the given tokens."""
    return sorted(v for v, c in Counter(rev).items() if c >= m)


class EventLog:
    """Buffer of trace events handed to the engine through pop_events."""

    team = Team.SPIES

    def __init__(self) -> None:
        self._events: list[TraceEvent] = []

    def _emit(self, kind: EventKind, round_no: int, **detail: object) -> None:
        self._events.append(TraceEvent(kind, self.team, round_no, dict(detail)))

    def pop_events(self) -> list[TraceEvent]:
        """Events since the previous call."""
        events, self._events = self._events, []
        return events


class ThreeTeamSpies(EventLog):
    """Two super-teams alternately guard a matching set A; regular spies cover meetings.

    Tokens ``0..a-1`` form the first super-team, ``a..2a-1`` the second,
    the rest are regular spies. Super-spy ``i`` of either team has home
    ``A[i]``. The first team sits on A at the end of every odd round, the
    second at every even round; placement is round 1. Each round the team
    that guarded A in the previous round is free: together with the
    regular spies not sitting on a meeting it is matched (Hall matching,
    regular spies preferred, ties by id) onto the meetings outside A that
    no regular spy guards yet.

    With too few spies for two super-teams (or no usable edge density),
    A is empty and every spy is a regular spy. With s >= n every vertex is
    occupied for the whole game.
    """

    def __init__(
        self,
        eps: float = 0.1,
        p: float | None = None,
        retries: int = 10,
        repairs: int = 200,
    ) -> None:
        super().__init__()
        if eps <= 0:
            raise ParameterError("eps", eps, "must be > 0")
        self.name = f"three-teams:eps={eps:g}"
        self._eps = eps
        self._p = p
        self._retries = retries
        self._repairs = repairs
        self._home: tuple[int, ...] = ()
        self._m = 1
        self._occupy_all = False
        self.params: SpyTeamParams | None = None
        self.certified = False

    @property
    def matching_set(self) -> tuple[int, ...]:
        """The guarded set A (empty in regular-only mode)."""
        return self._home

    def _choose_matching_set(self, g: Graph, config: GameConfig, seed: int) -> None:
        p = self._p
        if p is None:
            pairs = g.n * (g.n - 1) // 2
            p = g.edge_count / pairs if pairs else 0.0
        if not 0.0 < p < 1.0 or g.n < 2:
            logger.info("three-teams: density %.3f unusable, regular spies only", p)
            return
        params = spy_team_parameters(g.n, p, self._eps, config.r, config.m)
        self.params = params
        if config.s < params.total or params.matching_size >= g.n:
            logger.info(
                "three-teams: %d spies, %d needed; regular spies only",
                config.s,
                params.total,
            )
            return
        candidate = build_matching_set(
            g, params.gamma, params.delta, seed, self._retries, self._repairs, p
        )
        if not candidate.certified:
            logger.warning(
                "three-teams: matching set not certified (%d deficient), using best candidate",
                len(candidate.deficient),
            )
        self.certified = candidate.certified
        self._home = candidate.vertices

    def place(
        self,
        g: Graph,
        config: GameConfig,
        rev: tuple[int, ...],
        rng: SplitMix64,
    ) -> tuple[int, ...]:
        """Super-teams on A, regular spies on meetings then on free vertices."""
        self._m = config.m
        if config.s >= g.n:
            self._occupy_all = True
            return tuple(i % g.n for i in range(config.s))
        self._choose_matching_set(g, config, rng.next_u64())
        home = set(self._home)
        regular = config.s - 2 * len(self._home)
        spots = [v for v in meeting_vertices(rev, config.m) if v not in home][:regular]
        taken = home | set(spots)
        spare = [v for v in range(g.n) if v not in taken]
        spots.extend(spare[: regular - len(spots)])
        if len(spots) < regular:
            outside = [v for v in range(g.n) if v not in home] or [0]
            spots.extend(islice(cycle(outside), regular - len(spots)))
        return (*self._home, *self._home, *spots)

    def move(self, g: Graph, state: GameState) -> tuple[int, ...]:
        """Send the on-duty team home and dispatch the free spies."""
        positions = list(state.spy)
        if self._occupy_all:
            return tuple(positions)
        a = len(self._home)
        odd = state.round % 2 == 1
        duty = range(0, a) if odd else range(a, 2 * a)
        free = range(a, 2 * a) if odd else range(0, a)
        for token in duty:
            positions[token] = self._home[token % a]

        home = set(self._home)
        regular_at = {state.spy[t]: t for t in range(2 * a, len(positions))}
        meets = [v for v in meeting_vertices(state.rev, self._m) if v not in home]
        uncovered = [v for v in meets if v not in regular_at]
        if not uncovered:
            return tuple(positions)

        sources = {v: t for v, t in regular_at.items() if v not in meets}
        regular_order = sorted(sources)
        for token in free:
            if state.spy[token] == self._home[token % a]:
                sources.setdefault(state.spy[token], token)
        order = regular_order + sorted(v for v in sources if v in home)
        matched = maximum_matching(g, uncovered, order, order)
        for target, source in matched.items():
            positions[sources[source]] = target
        if len(matched) < len(uncovered):
            missing = [v for v in uncovered if v not in matched]
            logger.debug("round %d: Hall matching leaves %s unguarded", state.round, missing)
            self._emit(
                EventKind.MATCHING_FAILED,
                state.round,
                unmatched=missing,
                meetings=len(meets),
            )
        return tuple(positions)


class FollowSpies(EventLog):
    """Spy i shadows revolutionary i mod r, copying its every move."""

    name = "follow"

    def __init__(self) -> None:
        super().__init__()
        self._r = 1
        self._occupy_all = False

    def place(
        self,
        g: Graph,
        config: GameConfig,
        rev: tuple[int, ...],
        rng: SplitMix64,  # noqa: ARG002
    ) -> tuple[int, ...]:
        """Sit on the shadowed revolutionaries (or on every vertex if s >= n)."""
        if config.s >= g.n:
            self._occupy_all = True
            return tuple(i % g.n for i in range(config.s))
        self._r = len(rev)
        return tuple(rev[i % self._r] for i in range(config.s))

    def move(self, g: Graph, state: GameState) -> tuple[int, ...]:  # noqa: ARG002
        """Copy the shadowed revolutionary's move."""
        if self._occupy_all:
            return state.spy
        return tuple(state.rev[i % self._r] for i in range(len(state.spy)))


class OccupyAllSpies(EventLog):
    """Requires s >= n: one spy on every vertex, forever."""

    name = "occupy-all"

    def place(
        self,
        g: Graph,
        config: GameConfig,
        rev: tuple[int, ...],  # noqa: ARG002
        rng: SplitMix64,  # noqa: ARG002
    ) -> tuple[int, ...]:
        """Cover every vertex."""
        if config.s < g.n:
            raise ParameterError("s", config.s, f"must be >= n={g.n} to occupy every vertex")
        return tuple(i % g.n for i in range(config.s))

    def move(self, g: Graph, state: GameState) -> tuple[int, ...]:  # noqa: ARG002
        """Stay."""
        return state.spy


class StaticSpies(EventLog):
    """Spies sit on the highest-degree vertices and never move."""

    name = "static"

    def place(
        self,
        g: Graph,
        config: GameConfig,
        rev: tuple[int, ...],  # noqa: ARG002
        rng: SplitMix64,  # noqa: ARG002
    ) -> tuple[int, ...]:
        """Highest-degree vertices, cycling when s > n."""
        if config.s == 0:
            return ()
        return tuple(islice(cycle(degree_order(g)), config.s))

    def move(self, g: Graph, state: GameState) -> tuple[int, ...]:  # noqa: ARG002
        """Stay."""
        return state.spy


class ChaseSpies(EventLog):
    """Every spy steps toward the most crowded unguarded vertex."""

    name = "chase"

    def place(
        self,
        g: Graph,
        config: GameConfig,
        rev: tuple[int, ...],
        rng: SplitMix64,  # noqa: ARG002
    ) -> tuple[int, ...]:
        """Most crowded revolutionary vertices first."""
        if config.s == 0:
            return ()
        crowd = Counter(rev)
        targets = sorted(crowd, key=lambda v: (-crowd[v], v))
        return tuple(islice(cycle(targets), config.s))

    def move(self, g: Graph, state: GameState) -> tuple[int, ...]:
        """One shortest-path step toward the busiest unguarded vertex."""
        guarded = set(state.spy)
        crowd = Counter(v for v in state.rev if v not in guarded)
        if not crowd:
            return state.spy
        target = min(crowd, key=lambda v: (-crowd[v], v))
        return tuple(shortest_step(g, v, target) for v in state.spy)
