"""Revolutionary strategies: e.c.-witness growth strategies and baselines.

The growth strategies keep one group of co-located revolutionaries and
recruit one more revolutionary per successful round. With spies on B, the
group at a and a recruit at b move to a witness z of an e.c. query: z is
within distance j of both and at distance at least j + 1 from every spy,
so for j = 1 no spy can reach z in the same round and the grown group
ends the round unguarded.
"""

from __future__ import annotations

import logging
from itertools import cycle, islice
from typing import TYPE_CHECKING

from revspy.core.exceptions import ParameterError
from revspy.core.graph import distances, shortest_step
from revspy.core.models import ECQuery, ECVariant, EventKind, Team
from revspy.core.properties import find_witness
from revspy.core.strategies.spies import EventLog, degree_order


if TYPE_CHECKING:
    from revspy.core.graph import Graph
    from revspy.core.models import GameConfig, GameState
    from revspy.core.rng import SplitMix64


logger = logging.getLogger(__name__)


def distinct_placement(g: Graph, r: int) -> tuple[int, ...]:
    """r distinct highest-degree vertices; stacks in the same order once r > n."""
    return tuple(islice(cycle(degree_order(g)), r))


class _RevEventLog(EventLog):
    team = Team.REVOLUTIONARIES


class ECGrowthRevolutionaries(_RevEventLog):
    """Grow one unguarded group through (2,s)_j-e.c. witnesses.

    Each round the group (all tokens on the group vertex a) and the nearest
    unguarded free revolutionary b (ties by id) head for the lowest-id
    witness z of the query A = {a, b}, B = spy positions. For j = 1 they
    step onto z; for larger j they take one shortest-path step toward z and
    the witness is recomputed next round. Every witness used is recorded
    as a Witness event with its query and movers. A round without a
    witness is a stall: nobody moves, a WitnessNotFound event is recorded
    and the next recruit in line is tried in the following round.

    Recruits are unguarded, but a spy standing on a cannot be in B since A
    and B are disjoint. With the group guarded, z is only kept clear of the
    other spies and the spy on a may follow the group onto z; the group
    still relocates. Only a query whose B holds every spy guarantees an
    unguarded z at RoundEnd.
    """

    def __init__(self, j: int = 1) -> None:
        super().__init__()
        if j < 1:
            raise ParameterError("j", j, "must be >= 1")
        self.j = j
        self.name = f"ec-growth:j={j}"
        self._m = 1
        self._group: set[int] = set()
        self._skip = 0

    def place(self, g: Graph, config: GameConfig, rng: SplitMix64) -> tuple[int, ...]:  # noqa: ARG002
        """Distinct highest-degree vertices."""
        self._m = config.m
        self._group = set()
        self._skip = 0
        return distinct_placement(g, config.r)

    def _regroup(self, state: GameState) -> int | None:
        """Refresh the group, starting a new one if needed; return its vertex."""
        spies = set(state.spy)
        if self._group:
            anchor = state.rev[min(self._group)]
            self._group = {t for t, v in enumerate(state.rev) if v == anchor}
            return anchor
        unguarded = [t for t, v in enumerate(state.rev) if v not in spies]
        if not unguarded:
            return None
        anchor = state.rev[unguarded[0]]
        self._group = {t for t, v in enumerate(state.rev) if v == anchor}
        return anchor

    def _recruits(self, g: Graph, state: GameState, anchor: int) -> list[int]:
        """Free unguarded tokens, nearest to the group first, ties by id."""
        spies = set(state.spy)
        dist = distances(g, [anchor])
        free = [
            t
            for t, v in enumerate(state.rev)
            if t not in self._group and v not in spies and v in dist
        ]
        return sorted(free, key=lambda t: (dist[state.rev[t]], t))

    def _query(self, state: GameState, anchor: int, helpers: list[int]) -> ECQuery:
        spots = sorted({anchor, *(state.rev[t] for t in helpers)})
        blocked = tuple(sorted(set(state.spy) - set(spots)))
        variant = ECVariant.EC_J if self.j > 1 else ECVariant.EC
        return ECQuery(variant, A=tuple(spots), B=blocked, j=self.j)

    def _helpers(self, recruits: list[int]) -> list[int]:
        return [recruits[self._skip % len(recruits)]]

    def move(self, g: Graph, state: GameState) -> tuple[int, ...]:
        """Move the group and one recruit toward a fresh witness."""
        targets = list(state.rev)
        anchor = self._regroup(state)
        if anchor is None:
            return tuple(targets)
        recruits = self._recruits(g, state, anchor)
        if len(self._group) >= self._m:
            # already large enough: only relocate when guarded
            if anchor not in state.spy:
                return tuple(targets)
            helpers: list[int] = []
        elif not recruits:
            return tuple(targets)
        else:
            helpers = self._helpers(recruits)

        query = self._query(state, anchor, helpers)
        z = find_witness(g, query)
        if z is None:
            self._emit(
                EventKind.WITNESS_NOT_FOUND,
                state.round,
                query=query.to_dict(),
                recruit=helpers[0] if helpers else None,
            )
            self._skip += 1
            return tuple(targets)
        self._skip = 0
        movers = self._movers(g, state, z, helpers)
        self._emit(
            EventKind.WITNESS,
            state.round,
            query=query.to_dict(),
            witness=z,
            movers=movers,
        )
        for t in movers:
            targets[t] = z if self.j == 1 else shortest_step(g, state.rev[t], z)
        if self.j == 1 or all(targets[t] == z for t in movers):
            self._group = set(movers)
        return tuple(targets)

    def _movers(self, g: Graph, state: GameState, z: int, helpers: list[int]) -> list[int]:  # noqa: ARG002
        return sorted(self._group | set(helpers))


class OneECRevolutionaries(ECGrowthRevolutionaries):
    """Grow the group through (1,l,s)_j-e.c. witnesses with a pool of l helpers.

    The query is anchored at the group vertex v with the positions of the l
    nearest unguarded free revolutionaries as A. The witness z is close to
    v and to at least one helper; the lowest-id helper within distance j of
    z joins the group. With l = 1 and j = 1 this plays exactly like
    :class:`ECGrowthRevolutionaries`.
    """

    def __init__(self, l: int = 1, j: int = 1) -> None:  # noqa: E741
        super().__init__(j)
        if l < 1:
            raise ParameterError("l", l, "must be >= 1")
        self.l = l
        self.name = f"one-ec:l={l},j={j}"
        self.guaranteed = False

    def place(self, g: Graph, config: GameConfig, rng: SplitMix64) -> tuple[int, ...]:
        """Distinct highest-degree vertices; notes whether the win is guaranteed."""
        self.guaranteed = config.s <= config.r - config.m - self.l + 1
        if not self.guaranteed:
            logger.info(
                "one-ec: s=%d exceeds r-m-l+1=%d, playing without a guarantee",
                config.s,
                config.r - config.m - self.l + 1,
            )
        return super().place(g, config, rng)

    def _helpers(self, recruits: list[int]) -> list[int]:
        start = self._skip % len(recruits)
        return (recruits[start:] + recruits[:start])[: self.l]

    def _query(self, state: GameState, anchor: int, helpers: list[int]) -> ECQuery:
        spots = tuple(sorted({state.rev[t] for t in helpers} - {anchor}))
        if not spots:
            return super()._query(state, anchor, [])
        blocked = tuple(sorted(set(state.spy) - set(spots) - {anchor}))
        variant = ECVariant.ONE_EC_J if self.j > 1 else ECVariant.ONE_EC
        return ECQuery(variant, A=spots, B=blocked, j=self.j, v=anchor)

    def _movers(self, g: Graph, state: GameState, z: int, helpers: list[int]) -> list[int]:
        if not helpers:
            return sorted(self._group)
        dist = distances(g, [z], limit=self.j)
        reach = [t for t in helpers if state.rev[t] in dist]
        chosen = min(reach, key=lambda t: (state.rev[t], t)) if reach else helpers[0]
        return sorted(self._group | {chosen})


class GreedyRevolutionaries(_RevEventLog):
    """Everyone rallies on the highest-degree unguarded vertex."""

    name = "greedy"

    def place(self, g: Graph, config: GameConfig, rng: SplitMix64) -> tuple[int, ...]:  # noqa: ARG002
        """All tokens on the highest-degree vertex."""
        return (degree_order(g)[0],) * config.r

    def move(self, g: Graph, state: GameState) -> tuple[int, ...]:
        """One step toward the rally vertex along BFS parents from it."""
        guarded = set(state.spy)
        rally = next((v for v in degree_order(g) if v not in guarded), None)
        if rally is None:
            return state.rev
        dist = distances(g, [rally])
        steps: dict[int, int] = {}
        for v in set(state.rev):
            if v == rally or v not in dist:
                steps[v] = v
                continue
            steps[v] = min(w for w in g.neighbors(v) if dist.get(w) == dist[v] - 1)
        return tuple(steps[v] for v in state.rev)


class SquadRevolutionaries(_RevEventLog):
    """floor(r/m) squads of m assemble on distinct vertices, then roam together.

    Leftover tokens join the last squad. Every round each squad moves as one to a
    random neighbour drawn from the team stream, so the spies face fresh
    meetings every round.
    """

    name = "squads"

    def __init__(self) -> None:
        super().__init__()
        self._rng: SplitMix64 | None = None
        self._squad: list[int] = []

    def place(self, g: Graph, config: GameConfig, rng: SplitMix64) -> tuple[int, ...]:
        """Squad i on the i-th highest-degree vertex."""
        self._rng = rng
        squads = max(1, config.r // config.m)
        self._squad = [min(t // config.m, squads - 1) for t in range(config.r)]
        spots = list(islice(cycle(degree_order(g)), squads))
        return tuple(spots[s] for s in self._squad)

    def move(self, g: Graph, state: GameState) -> tuple[int, ...]:
        """Each squad takes the same random step."""
        assert self._rng is not None
        heads: dict[int, int] = {}
        for t, s in enumerate(self._squad):
            heads.setdefault(s, state.rev[t])
        step = {}
        for s, v in sorted(heads.items()):
            options = g.neighbors(v)
            step[s] = self._rng.choice(options) if options else v
        return tuple(
            step[s] if state.rev[t] == heads[s] else state.rev[t]
            for t, s in enumerate(self._squad)
        )


class RandomWalkRevolutionaries(_RevEventLog):
    """Independent seeded random walks (staying is one of the options)."""

    name = "random"

    def __init__(self) -> None:
        super().__init__()
        self._rng: SplitMix64 | None = None

    def place(self, g: Graph, config: GameConfig, rng: SplitMix64) -> tuple[int, ...]:
        """Uniform random vertices."""
        self._rng = rng
        return tuple(rng.below(g.n) for _ in range(config.r))

    def move(self, g: Graph, state: GameState) -> tuple[int, ...]:
        """Uniform choice among the legal moves of every token."""
        assert self._rng is not None
        rng = self._rng
        return tuple(rng.choice((v, *g.neighbors(v))) for v in state.rev)
