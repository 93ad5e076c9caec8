"""Exact solver: decide the game on tiny graphs by backward induction.

Positions are multisets: the tokens of one team are interchangeable, so a
team's positions are stored as sorted tuples. A team's simultaneous move
is split into sequential one-token sub-moves (no information reaches the
opponent in between), which keeps the branching at ``deg + 1`` per node.
During a team's phase the tuple is stored as ``moved + unmoved`` (each
part sorted) together with the split point; the next token to move is the
lowest unmoved one.

The revolutionaries' attractor is computed with successor counters in
breadth-first order, so ``rank`` is the number of sub-moves within which
they can force an unguarded meeting. Everything outside the attractor is
the spies' safe region.
"""

from __future__ import annotations

import logging
from bisect import insort
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
from typing import TYPE_CHECKING, Any

from revspy.core.exceptions import BudgetExceededError, ParameterError
from revspy.core.models import Team
from revspy.core.strategies.spies import EventLog


if TYPE_CHECKING:
    from collections.abc import Iterator

    from revspy.core.graph import Graph
    from revspy.core.models import GameConfig, GameState
    from revspy.core.rng import SplitMix64


logger = logging.getLogger(__name__)

DEFAULT_SOLVER_BUDGET = 10**7

# (phase, split, rev, spy); phase 0 = revolutionaries to move, 1 = spies
NodeKey = tuple[int, int, tuple[int, ...], tuple[int, ...]]
WIN = -1


def _multisets(n: int, k: int) -> int:
    return comb(n + k - 1, k)


def estimate_states(n: int, r: int, s: int) -> int:
    """Upper bound on the number of solver nodes for n vertices, r and s tokens.

    Example:
        >>> estimate_states(2, 2, 0)
        7
    """
    rev_phase = sum(_multisets(n, i) * _multisets(n, r - i) for i in range(r))
    spy_phase = sum(_multisets(n, i) * _multisets(n, s - i) for i in range(s))
    return rev_phase * _multisets(n, s) + spy_phase * _multisets(n, r)


def unguarded_meeting(rev: tuple[int, ...], spy: tuple[int, ...], m: int) -> bool:
    """True when some vertex holds at least m revolutionaries and no spy."""
    guarded = set(spy)
    return any(c >= m and v not in guarded for v, c in Counter(rev).items())


class SolverInstance:
    """The full move graph of one (g, r, m, s) instance with its attractor."""

    def __init__(self, g: Graph, r: int, m: int, s: int) -> None:
        self.g = g
        self.r = r
        self.m = m
        self.s = s
        self._closed = [tuple(sorted((v, *g.neighbors(v)))) for v in g.vertices()]
        self.index: dict[NodeKey, int] = {}
        self.keys: list[NodeKey] = []
        self.succ: list[list[int]] = []
        self.rank: list[int] = []

    # -- move generation -------------------------------------------------

    def _round_end(self, rev: tuple[int, ...], spy: tuple[int, ...]) -> NodeKey | None:
        if unguarded_meeting(rev, spy, self.m):
            return None
        return (0, 0, rev, spy)

    def moves(self, key: NodeKey) -> Iterator[tuple[int, int, NodeKey | None]]:
        """Sub-moves of a node as ``(source, target, successor)``; None = win."""
        phase, split, rev, spy = key
        tokens = rev if phase == 0 else spy
        moved, rest = list(tokens[:split]), tokens[split:]
        last = split + 1 == len(tokens)
        source = rest[0]
        for target in self._closed[source]:
            new = moved.copy()
            insort(new, target)
            placed = (*new, *rest[1:])
            if phase == 0:
                if not last:
                    yield source, target, (0, split + 1, placed, spy)
                elif self.s == 0:
                    yield source, target, self._round_end(placed, spy)
                else:
                    yield source, target, (1, 0, placed, spy)
            elif not last:
                yield source, target, (1, split + 1, rev, placed)
            else:
                yield source, target, self._round_end(rev, placed)

    def _node(self, key: NodeKey, queue: deque[int]) -> int:
        idx = self.index.get(key)
        if idx is None:
            idx = len(self.keys)
            self.index[key] = idx
            self.keys.append(key)
            self.succ.append([])
            queue.append(idx)
        return idx

    # -- solving ---------------------------------------------------------

    def explore(self) -> None:
        """Enumerate every node reachable from a round end."""
        queue: deque[int] = deque()
        n = self.g.n
        for rev in combinations_with_replacement(range(n), self.r):
            for spy in combinations_with_replacement(range(n), self.s):
                key = self._round_end(rev, spy)
                if key is not None:
                    self._node(key, queue)
        while queue:
            idx = queue.popleft()
            self.succ[idx] = [
                WIN if nxt is None else self._node(nxt, queue)
                for _, _, nxt in self.moves(self.keys[idx])
            ]
        logger.debug("solver explored %d nodes", len(self.keys))

    def attract(self) -> None:
        """Rank every node the revolutionaries can force into a win (-1 = safe)."""
        size = len(self.keys)
        win = size  # virtual terminal node
        pred: list[list[int]] = [[] for _ in range(size + 1)]
        for u, targets in enumerate(self.succ):
            for x in targets:
                pred[win if x == WIN else x].append(u)
        remaining = [len(targets) for targets in self.succ]
        rank = [-1] * (size + 1)
        rank[win] = 0
        queue = deque([win])
        while queue:
            x = queue.popleft()
            for u in pred[x]:
                if rank[u] >= 0:
                    continue
                if self.keys[u][0] == 0:
                    rank[u] = rank[x] + 1
                    queue.append(u)
                else:
                    remaining[u] -= 1
                    if remaining[u] == 0:
                        rank[u] = rank[x] + 1
                        queue.append(u)
        self.rank = rank[:size]

    def node_rank(self, x: int) -> int:
        """Rank of a successor entry (0 for the win terminal)."""
        return 0 if x == WIN else self.rank[x]

    def closure_holds(self) -> bool:
        """Re-apply one attractor step and check nothing changes."""
        for u, targets in enumerate(self.succ):
            ranks = [self.node_rank(x) for x in targets]
            if self.keys[u][0] == 0:
                forced = any(r >= 0 for r in ranks)
            else:
                forced = bool(ranks) and all(r >= 0 for r in ranks)
            if forced != (self.rank[u] >= 0):
                return False
        return True

    def position_won(self, rev: tuple[int, ...], spy: tuple[int, ...]) -> bool:
        """Revolutionaries win from this round end (sorted positions)."""
        key = self._round_end(rev, spy)
        return key is None or self.rank[self.index[key]] >= 0

    def spy_reply(self, rev: tuple[int, ...]) -> tuple[int, ...] | None:
        """Lowest spy placement that keeps ``rev`` out of the attractor."""
        for spy in combinations_with_replacement(range(self.g.n), self.s):
            if not self.position_won(rev, spy):
                return spy
        return None


@dataclass(frozen=True, slots=True)
class Solution:
    """Outcome of :func:`solve`.

    Attributes:
        winner: The team with a winning strategy under perfect play.
        r, m, s: The instance.
        states: Number of solver nodes explored.
        attractor: Number of nodes from which the revolutionaries force a win.
        closure_ok: Re-running the attractor step left every node unchanged.
        opening: A winning revolutionary placement, if any.
    """

    winner: Team
    r: int
    m: int
    s: int
    states: int
    attractor: int
    closure_ok: bool
    opening: tuple[int, ...] | None = None
    instance: SolverInstance | None = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready summary."""
        return {
            "winner": str(self.winner),
            "r": self.r,
            "m": self.m,
            "s": self.s,
            "states": self.states,
            "attractor": self.attractor,
            "closure_ok": self.closure_ok,
            "opening": None if self.opening is None else list(self.opening),
        }


def _check_instance(g: Graph, r: int, m: int, s: int) -> None:
    if g.n < 1:
        raise ParameterError("n", g.n, "graph must have at least one vertex")
    if r < 1:
        raise ParameterError("r", r, "must be >= 1")
    if m < 1:
        raise ParameterError("m", m, "must be >= 1")
    if s < 0:
        raise ParameterError("s", s, "must be >= 0")


def solve(
    g: Graph, r: int, m: int, s: int, budget: int = DEFAULT_SOLVER_BUDGET
) -> Solution:
    """Decide the game under perfect play.

    The revolutionaries place first, the spies place seeing them, and the
    placement counts as the first round end. The revolutionaries win iff
    some placement leaves every spy reply inside their attractor.

    Raises:
        BudgetExceededError: If the state estimate exceeds ``budget``.

    Example:
        >>> from revspy.core.graph import complete_graph
        >>> solve(complete_graph(2), 2, 2, 0).winner.value
        'revolutionaries'
    """
    _check_instance(g, r, m, s)
    estimate = estimate_states(g.n, r, s)
    if estimate > budget:
        raise BudgetExceededError(f"exact solve (n={g.n}, r={r}, s={s})", estimate, budget)
    inst = SolverInstance(g, r, m, s)
    inst.explore()
    inst.attract()
    opening = next(
        (
            rev
            for rev in combinations_with_replacement(range(g.n), r)
            if inst.spy_reply(rev) is None
        ),
        None,
    )
    winner = Team.SPIES if opening is None else Team.REVOLUTIONARIES
    solution = Solution(
        winner=winner,
        r=r,
        m=m,
        s=s,
        states=len(inst.keys),
        attractor=sum(1 for x in inst.rank if x >= 0),
        closure_ok=inst.closure_holds(),
        opening=opening,
        instance=inst,
    )
    logger.info(
        "solve n=%d r=%d m=%d s=%d: %s (%d states)", g.n, r, m, s, winner, solution.states
    )
    return solution


def spy_number_exact(g: Graph, r: int, m: int, budget: int = DEFAULT_SOLVER_BUDGET) -> int:
    """Smallest s for which the spies win; 0 when m > r.

    Example:
        >>> from revspy.core.graph import path_graph
        >>> spy_number_exact(path_graph(4), 3, 2)
        1
    """
    _check_instance(g, r, m, 0)
    if m > r:
        return 0
    for s in range(min(g.n, r - m + 1) + 1):
        if solve(g, r, m, s, budget).winner is Team.SPIES:
            return s
    # unreachable: min(n, r - m + 1) spies always suffice
    raise AssertionError("trivial upper bound violated")


@dataclass(frozen=True, slots=True)
class BoundsReport:
    """Exact spy number against min{n, r//m} <= sigma <= min{n, r-m+1}."""

    n: int
    r: int
    m: int
    sigma: int
    lower: int
    upper: int
    vacuous: bool

    @property
    def lower_ok(self) -> bool:
        return self.sigma >= self.lower

    @property
    def upper_ok(self) -> bool:
        return self.sigma <= self.upper

    @property
    def holds(self) -> bool:
        return self.lower_ok and self.upper_ok

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready summary."""
        return {
            "n": self.n,
            "r": self.r,
            "m": self.m,
            "sigma": self.sigma,
            "lower": self.lower,
            "upper": self.upper,
            "lower_ok": self.lower_ok,
            "upper_ok": self.upper_ok,
            "vacuous": self.vacuous,
        }


def verify_trivial_bounds(
    g: Graph, r: int, m: int, budget: int = DEFAULT_SOLVER_BUDGET
) -> BoundsReport:
    """Compute sigma exactly and compare it with the trivial bounds.

    With m > r no meeting can form: sigma = 0 and the report is vacuous.
    """
    sigma = spy_number_exact(g, r, m, budget)
    if m > r:
        return BoundsReport(g.n, r, m, sigma, 0, 0, vacuous=True)
    return BoundsReport(
        g.n, r, m, sigma, min(g.n, r // m), min(g.n, r - m + 1), vacuous=False
    )


# ---------------------------------------------------------------------------
# Positional strategies read off a solution
# ---------------------------------------------------------------------------


def _assign(current: tuple[int, ...], steps: list[tuple[int, int]]) -> tuple[int, ...]:
    """Hand multiset sub-moves to tokens: tokens on a vertex take its moves in id order."""
    pending: defaultdict[int, deque[int]] = defaultdict(deque)
    for source, target in steps:
        pending[source].append(target)
    return tuple(pending[v].popleft() if pending[v] else v for v in current)


def _instance(solution: Solution, config: GameConfig) -> SolverInstance:
    inst = solution.instance
    if inst is None:
        raise ParameterError("solution", solution, "carries no solver tables")
    if (config.r, config.m, config.s) != (inst.r, inst.m, inst.s):
        raise ParameterError(
            "config", config, f"solution is for r={inst.r}, m={inst.m}, s={inst.s}"
        )
    return inst


class SolverRevolutionaries(EventLog):
    """Positional revolutionary strategy: always step to the lowest-rank successor."""

    team = Team.REVOLUTIONARIES
    name = "solver"

    def __init__(self, solution: Solution) -> None:
        super().__init__()
        self._solution = solution
        self._inst: SolverInstance | None = solution.instance

    def place(self, g: Graph, config: GameConfig, rng: SplitMix64) -> tuple[int, ...]:  # noqa: ARG002
        """The winning opening, or all tokens on vertex 0 when there is none."""
        self._inst = _instance(self._solution, config)
        return self._solution.opening or (0,) * config.r

    def move(self, g: Graph, state: GameState) -> tuple[int, ...]:  # noqa: ARG002
        """Follow the attractor ranks down to a win."""
        assert self._inst is not None
        inst = self._inst
        key: NodeKey | None = (0, 0, tuple(sorted(state.rev)), tuple(sorted(state.spy)))
        steps: list[tuple[int, int]] = []
        while key is not None and key[0] == 0 and not (key[1] == 0 and steps):
            options = list(inst.moves(key))
            succ = inst.succ[inst.index[key]]
            best = min(
                range(len(options)),
                key=lambda i: (inst.node_rank(succ[i]) < 0, inst.node_rank(succ[i]), i),
            )
            source, target, key = options[best]
            steps.append((source, target))
        return _assign(state.rev, steps)


class SolverSpies(EventLog):
    """Positional spy strategy: stay outside the revolutionaries' attractor."""

    name = "solver"

    def __init__(self, solution: Solution) -> None:
        super().__init__()
        self._solution = solution
        self._inst: SolverInstance | None = solution.instance

    def place(
        self,
        g: Graph,
        config: GameConfig,
        rev: tuple[int, ...],
        rng: SplitMix64,  # noqa: ARG002
    ) -> tuple[int, ...]:
        """The lowest safe reply to the revolutionaries' placement."""
        self._inst = _instance(self._solution, config)
        if config.s == 0:
            return ()
        reply = self._inst.spy_reply(tuple(sorted(rev)))
        return reply if reply is not None else (0,) * config.s

    def move(self, g: Graph, state: GameState) -> tuple[int, ...]:  # noqa: ARG002
        """Pick, token by token, a successor outside the attractor."""
        assert self._inst is not None
        inst = self._inst
        if not state.spy:
            return state.spy
        key: NodeKey | None = (1, 0, tuple(sorted(state.rev)), tuple(sorted(state.spy)))
        steps: list[tuple[int, int]] = []
        while key is not None and key[0] == 1:
            options = list(inst.moves(key))
            succ = inst.succ[inst.index[key]]
            safe = [i for i, x in enumerate(succ) if inst.node_rank(x) < 0]
            source, target, key = options[safe[0] if safe else 0]
            steps.append((source, target))
        return _assign(state.spy, steps)


def extract_strategies(solution: Solution) -> tuple[SolverRevolutionaries, SolverSpies]:
    """Positional strategies for both teams, playable by the game engine."""
    return SolverRevolutionaries(solution), SolverSpies(solution)
