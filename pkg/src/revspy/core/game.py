"""Rules of Revolutionaries and Spies as a deterministic state machine.

A round is: revolutionaries move (each may stay or step to a neighbour),
then spies move the same way, then the round ends. Placement counts as
round 1. The revolutionaries win as soon as a RoundEnd shows an unguarded
meeting: at least m revolutionaries on a vertex without a spy. A
simulation that reaches its horizon only says the spies survived that
long.

Moves are validated token by token; a strategy that proposes an illegal
move forfeits and its opponent wins.
"""

from __future__ import annotations

import logging
from collections import Counter
from typing import TYPE_CHECKING, Any

from revspy.core.exceptions import RuleViolationError, TraceFormatError
from revspy.core.models import (
    ECQuery,
    ECVariant,
    EventKind,
    GameConfig,
    GameResult,
    GameState,
    Outcome,
    Phase,
    Team,
    TraceEvent,
    TraceRound,
)
from revspy.core.properties import verify_witness
from revspy.core.rng import SplitMix64, derive_seed


if TYPE_CHECKING:
    from collections.abc import Sequence

    from revspy.core.graph import Graph, VertexSet
    from revspy.core.ports import RevolutionaryStrategy, SpyStrategy


logger = logging.getLogger(__name__)


def meetings(g: Graph, state: GameState, m: int) -> VertexSet:
    """Vertices holding at least m revolutionaries.

    Example:
        >>> from revspy.core.graph import empty_graph
        >>> state = GameState(rev=(3, 3), spy=(3,), round=1, phase=Phase.ROUND_END)
        >>> meetings(empty_graph(4), state, 2)
        (3,)
    """
    for v in state.rev:
        g.check_vertex(v)
    return tuple(sorted(v for v, c in Counter(state.rev).items() if c >= m))


def unguarded_meetings(g: Graph, state: GameState, m: int) -> VertexSet:
    """Meetings with no spy on their vertex."""
    guarded = set(state.spy)
    return tuple(v for v in meetings(g, state, m) if v not in guarded)


def legal_moves(g: Graph, position: int) -> VertexSet:
    """N(position) together with position itself."""
    return tuple(sorted((*g.neighbors(position), position)))


def _check_placement(
    g: Graph, team: Team, positions: Sequence[int], expected: int
) -> tuple[int, ...]:
    placed = tuple(positions)
    if len(placed) != expected:
        raise RuleViolationError(
            team.value, len(placed), -1, -1, 1, f"placed {len(placed)} tokens, expected {expected}"
        )
    for token, v in enumerate(placed):
        if not 0 <= v < g.n:
            raise RuleViolationError(team.value, token, -1, v, 1, "no such vertex")
    return placed


def _check_moves(
    g: Graph,
    team: Team,
    current: tuple[int, ...],
    targets: Sequence[int],
    round_no: int,
) -> tuple[int, ...]:
    moved = tuple(targets)
    if len(moved) != len(current):
        raise RuleViolationError(
            team.value,
            len(moved),
            -1,
            -1,
            round_no,
            f"moved {len(moved)} tokens, expected {len(current)}",
        )
    for token, (source, target) in enumerate(zip(current, moved, strict=True)):
        if target != source and (not 0 <= target < g.n or not g.has_edge(source, target)):
            raise RuleViolationError(team.value, token, source, target, round_no)
    return moved


def apply_round(
    g: Graph,
    state: GameState,
    rev_moves: Sequence[int],
    spy_moves: Sequence[int],
) -> GameState:
    """Apply one full round to a RoundEnd state.

    Raises:
        RuleViolationError: Naming the first illegal token (revolutionaries
            are validated before spies).
    """
    round_no = state.round + 1
    rev = _check_moves(g, Team.REVOLUTIONARIES, state.rev, rev_moves, round_no)
    spy = _check_moves(g, Team.SPIES, state.spy, spy_moves, round_no)
    return GameState(rev=rev, spy=spy, round=round_no, phase=Phase.ROUND_END)


def _forfeit(err: RuleViolationError, team: Team, attempted: Sequence[int]) -> TraceEvent:
    return TraceEvent(
        kind=EventKind.FORFEIT,
        team=team,
        round=err.round,
        detail={
            "token": err.token,
            "source": err.source,
            "target": err.target,
            "reason": err.reason,
            "attempted": [int(v) for v in attempted],
        },
    )


def play(
    g: Graph,
    config: GameConfig,
    rev_strategy: RevolutionaryStrategy,
    spy_strategy: SpyStrategy,
    seed: int = 0,
) -> GameResult:
    """Run a game until an unguarded meeting, a forfeit or the horizon.

    Each team gets a private SplitMix64 stream derived from ``seed``. A
    forfeit event keeps the rejected positions under ``attempted`` so that
    :func:`replay` can re-check them.

    Example:
        >>> from revspy.core.graph import complete_graph
        >>> from revspy.core.strategies import build_rev_strategy, build_spy_strategy
        >>> result = play(
        ...     complete_graph(2),
        ...     GameConfig(r=2, m=2, s=0, horizon=5),
        ...     build_rev_strategy("greedy"),
        ...     build_spy_strategy("static"),
        ... )
        >>> result.winner.value, result.winning_round
        ('revolutionaries', 1)
    """
    rev_rng = SplitMix64(derive_seed(seed, "rev"))
    spy_rng = SplitMix64(derive_seed(seed, "spy"))
    rounds: list[TraceRound] = []

    def finish(
        winner: Outcome, winning_round: int | None, forfeit: Team | None = None
    ) -> GameResult:
        logger.debug(
            "game over: %s at round %s (%d rounds)", winner, winning_round, len(rounds)
        )
        return GameResult(
            config=config,
            winner=winner,
            winning_round=winning_round,
            rounds=tuple(rounds),
            forfeit=forfeit,
            seed=seed,
            rev_strategy=rev_strategy.name,
            spy_strategy=spy_strategy.name,
        )

    def record(state: GameState, extra: Sequence[TraceEvent] = ()) -> VertexSet:
        events = (*rev_strategy.pop_events(), *spy_strategy.pop_events(), *extra)
        unguarded = unguarded_meetings(g, state, config.m)
        rounds.append(TraceRound(state.round, state.rev, state.spy, unguarded, events))
        return unguarded

    proposed = list(rev_strategy.place(g, config, rev_rng))
    try:
        rev = _check_placement(g, Team.REVOLUTIONARIES, proposed, config.r)
    except RuleViolationError as err:
        record(GameState((), (), 1, Phase.ROUND_END), (_forfeit(err, Team.REVOLUTIONARIES, proposed),))
        return finish(Outcome.SPIES_SURVIVED, None, Team.REVOLUTIONARIES)
    proposed = list(spy_strategy.place(g, config, rev, spy_rng))
    try:
        spy = _check_placement(g, Team.SPIES, proposed, config.s)
    except RuleViolationError as err:
        record(GameState(rev, (), 1, Phase.ROUND_END), (_forfeit(err, Team.SPIES, proposed),))
        return finish(Outcome.REVOLUTIONARIES, 1, Team.SPIES)

    state = GameState(rev=rev, spy=spy, round=1, phase=Phase.ROUND_END)
    if record(state):
        return finish(Outcome.REVOLUTIONARIES, 1)

    for round_no in range(2, config.horizon + 1):
        rev_turn = GameState(state.rev, state.spy, round_no, Phase.REV_MOVE)
        proposed = list(rev_strategy.move(g, rev_turn))
        try:
            rev = _check_moves(g, Team.REVOLUTIONARIES, state.rev, proposed, round_no)
        except RuleViolationError as err:
            stuck = GameState(state.rev, state.spy, round_no, Phase.ROUND_END)
            record(stuck, (_forfeit(err, Team.REVOLUTIONARIES, proposed),))
            return finish(Outcome.SPIES_SURVIVED, None, Team.REVOLUTIONARIES)
        spy_turn = GameState(rev, state.spy, round_no, Phase.SPY_MOVE)
        proposed = list(spy_strategy.move(g, spy_turn))
        try:
            spy = _check_moves(g, Team.SPIES, state.spy, proposed, round_no)
        except RuleViolationError as err:
            stuck = GameState(rev, state.spy, round_no, Phase.ROUND_END)
            record(stuck, (_forfeit(err, Team.SPIES, proposed),))
            return finish(Outcome.REVOLUTIONARIES, round_no, Team.SPIES)
        state = GameState(rev, spy, round_no, Phase.ROUND_END)
        if record(state):
            return finish(Outcome.REVOLUTIONARIES, round_no)
    return finish(Outcome.SPIES_SURVIVED, None)


# ---------------------------------------------------------------------------
# Traces
# ---------------------------------------------------------------------------


def trace_to_dict(result: GameResult) -> dict[str, Any]:
    """Serialize a game to the trace JSON layout."""
    return {
        "config": result.config.to_dict(),
        "seed": result.seed,
        "strategies": {"rev": result.rev_strategy, "spy": result.spy_strategy},
        "rounds": [
            {
                "round": rnd.round,
                "rev": list(rnd.rev),
                "spy": list(rnd.spy),
                "unguarded": list(rnd.unguarded),
                "events": [e.to_dict() for e in rnd.events],
            }
            for rnd in result.rounds
        ],
        "verdict": {
            "winner": str(result.winner),
            "round": result.winning_round,
            "forfeit": None if result.forfeit is None else str(result.forfeit),
        },
    }


def _event_from_dict(raw: dict[str, Any]) -> TraceEvent:
    return TraceEvent(
        kind=EventKind(raw["kind"]),
        team=Team(raw["team"]),
        round=int(raw["round"]),
        detail=dict(raw.get("detail", {})),
    )


def trace_from_dict(data: dict[str, Any]) -> GameResult:
    """Parse the trace JSON layout.

    Raises:
        TraceFormatError: On missing fields or unknown labels.
    """
    try:
        config = GameConfig(**{k: int(data["config"][k]) for k in ("r", "m", "s", "horizon")})
        rounds = tuple(
            TraceRound(
                round=int(rnd["round"]),
                rev=tuple(int(v) for v in rnd["rev"]),
                spy=tuple(int(v) for v in rnd["spy"]),
                unguarded=tuple(int(v) for v in rnd["unguarded"]),
                events=tuple(_event_from_dict(e) for e in rnd.get("events", [])),
            )
            for rnd in data["rounds"]
        )
        verdict = data["verdict"]
        winning_round = verdict.get("round")
        forfeit = verdict.get("forfeit")
        strategies = data.get("strategies", {})
        return GameResult(
            config=config,
            winner=Outcome(verdict["winner"]),
            winning_round=None if winning_round is None else int(winning_round),
            rounds=rounds,
            forfeit=None if forfeit is None else Team(forfeit),
            seed=int(data.get("seed", 0)),
            rev_strategy=str(strategies.get("rev", "")),
            spy_strategy=str(strategies.get("spy", "")),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise TraceFormatError(f"malformed trace: {e}") from e


def _attempted(event: TraceEvent) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in event.detail["attempted"])
    except (KeyError, TypeError, ValueError) as e:
        raise TraceFormatError(
            f"round {event.round}: forfeit by {event.team} does not record the attempted move"
        ) from e


def _check_forfeit(
    g: Graph,
    config: GameConfig,
    event: TraceEvent,
    rnd: TraceRound,
    previous: tuple[tuple[int, ...], tuple[int, ...]] | None,
) -> None:
    """Confirm a recorded forfeit: the attempt is illegal and nothing else moved."""
    team = event.team
    if event.round != rnd.round:
        raise TraceFormatError(f"round {rnd.round}: forfeit event dated round {event.round}")
    attempted = _attempted(event)
    try:
        if previous is None:
            expected = config.r if team is Team.REVOLUTIONARIES else config.s
            _check_placement(g, team, attempted, expected)
        else:
            current = previous[0] if team is Team.REVOLUTIONARIES else previous[1]
            _check_moves(g, team, current, attempted, rnd.round)
    except RuleViolationError:
        pass
    else:
        raise TraceFormatError(f"round {rnd.round}: recorded forfeit by {team} is a legal move")

    before_rev, before_spy = ((), ()) if previous is None else previous
    try:
        if team is Team.REVOLUTIONARIES:
            if rnd.rev != before_rev:
                raise TraceFormatError(f"round {rnd.round}: revolutionaries moved in their forfeit round")
        elif previous is None:
            _check_placement(g, Team.REVOLUTIONARIES, rnd.rev, config.r)
        else:
            _check_moves(g, Team.REVOLUTIONARIES, before_rev, rnd.rev, rnd.round)
    except RuleViolationError as e:
        raise TraceFormatError(f"illegal move in trace: {e}") from e
    if rnd.spy != before_spy:
        raise TraceFormatError(f"round {rnd.round}: spies moved in a forfeit round")


def _check_witness(g: Graph, event: TraceEvent, rnd: TraceRound) -> None:
    """Re-check a recorded witness against its query."""
    try:
        raw = event.detail["query"]
        query = ECQuery(
            ECVariant(raw["variant"]),
            A=tuple(int(v) for v in raw["A"]),
            B=tuple(int(v) for v in raw["B"]),
            j=int(raw["j"]),
            v=None if raw.get("v") is None else int(raw["v"]),
        )
        z = int(event.detail["witness"])
    except (KeyError, TypeError, ValueError) as e:
        raise TraceFormatError(f"round {rnd.round}: malformed witness event") from e
    named = (*query.A, *query.B, z, *(() if query.v is None else (query.v,)))
    if any(not 0 <= u < g.n for u in named) or not verify_witness(g, query, z):
        raise TraceFormatError(f"round {rnd.round}: recorded witness {z} does not satisfy its query")


def replay(g: Graph, trace: GameResult | dict[str, Any]) -> GameResult:
    """Re-validate every move of a trace and re-derive its verdict.

    A forfeit is accepted only if its recorded attempt really breaks the
    rules; a survival only if the trace runs to the configured horizon.
    Recorded witnesses must satisfy their query. Spies move one step, so a
    j = 1 witness whose query kept away from every spy is unguarded at
    RoundEnd.
    Returns the re-derived result (events carried over from the trace).

    Raises:
        TraceFormatError: If a move is illegal, a token count changes, an
            unguarded set, a forfeit, a witness, the length or the verdict
            does not match.
    """
    recorded = trace_from_dict(trace) if isinstance(trace, dict) else trace
    config = recorded.config
    rounds = recorded.rounds
    if not rounds:
        raise TraceFormatError("trace has no rounds")
    if len(rounds) > config.horizon:
        raise TraceFormatError(f"trace has {len(rounds)} rounds, horizon is {config.horizon}")
    winner = Outcome.SPIES_SURVIVED
    winning_round: int | None = None
    forfeit: Team | None = None
    previous: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    for index, rnd in enumerate(rounds):
        if rnd.round != index + 1:
            raise TraceFormatError(f"round {index + 1} recorded as {rnd.round}")
        forfeits = [e for e in rnd.events if e.kind is EventKind.FORFEIT]
        if len(forfeits) > 1:
            raise TraceFormatError(f"round {rnd.round}: more than one forfeit")
        if forfeits:
            _check_forfeit(g, config, forfeits[0], rnd, previous)
            forfeit = forfeits[0].team
        else:
            if len(rnd.rev) != config.r or len(rnd.spy) != config.s:
                raise TraceFormatError(f"round {rnd.round}: token count changed")
            try:
                if previous is None:
                    _check_placement(g, Team.REVOLUTIONARIES, rnd.rev, config.r)
                    _check_placement(g, Team.SPIES, rnd.spy, config.s)
                else:
                    _check_moves(g, Team.REVOLUTIONARIES, previous[0], rnd.rev, rnd.round)
                    _check_moves(g, Team.SPIES, previous[1], rnd.spy, rnd.round)
            except RuleViolationError as e:
                raise TraceFormatError(f"illegal move in trace: {e}") from e
        for event in rnd.events:
            if event.kind is EventKind.WITNESS:
                _check_witness(g, event, rnd)
        state = GameState(rnd.rev, rnd.spy, rnd.round, Phase.ROUND_END)
        unguarded = unguarded_meetings(g, state, config.m)
        if unguarded != rnd.unguarded:
            raise TraceFormatError(
                f"round {rnd.round}: unguarded meetings {list(unguarded)} recorded as {list(rnd.unguarded)}"
            )
        if forfeit is not None or unguarded:
            if forfeit is not Team.REVOLUTIONARIES:
                winner, winning_round = Outcome.REVOLUTIONARIES, rnd.round
            ending = "win" if forfeit is None else "forfeit"
            if index != len(rounds) - 1:
                raise TraceFormatError(f"trace continues after the {ending} at round {rnd.round}")
            break
        previous = (rnd.rev, rnd.spy)
    else:
        if len(rounds) != config.horizon:
            raise TraceFormatError(
                f"spies survived {len(rounds)} of {config.horizon} rounds: trace ends before the horizon"
            )
    if (winner, winning_round, forfeit) != (
        recorded.winner,
        recorded.winning_round,
        recorded.forfeit,
    ):
        raise TraceFormatError(
            f"verdict mismatch: trace says {recorded.winner} at {recorded.winning_round}, "
            f"replay gives {winner} at {winning_round}"
        )
    return GameResult(
        config=config,
        winner=winner,
        winning_round=winning_round,
        rounds=rounds,
        forfeit=forfeit,
        seed=recorded.seed,
        rev_strategy=recorded.rev_strategy,
        spy_strategy=recorded.spy_strategy,
    )
