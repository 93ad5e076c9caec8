"""Unit tests for the game engine, traces and replay."""

from __future__ import annotations

import copy
import json
from typing import Any

import pytest

from revspy.core.graph import Graph, complete_graph, path_graph
from revspy.core.models import (
    EventKind,
    GameConfig,
    GameState,
    Outcome,
    Phase,
    Team,
)
from revspy.core.strategies import build_rev_strategy, build_spy_strategy


class _FixedRevs:
    """Places where told and never moves."""

    name = "fixed"

    def __init__(self, spots: tuple[int, ...]) -> None:
        self.spots = spots

    def place(self, g, config, rng):  # noqa: ANN001, ANN201, ARG002
        return self.spots

    def move(self, g, state):  # noqa: ANN001, ANN201, ARG002
        return state.rev

    def pop_events(self) -> list:
        return []


class _JumpingSpy:
    """Places on a vertex, then jumps to a fixed vertex in round 2."""

    name = "jumper"

    def __init__(self, start: tuple[int, ...], jump: tuple[int, ...]) -> None:
        self.start = start
        self.jump = jump

    def place(self, g, config, rev, rng):  # noqa: ANN001, ANN201, ARG002
        return self.start

    def move(self, g, state):  # noqa: ANN001, ANN201, ARG002
        return self.jump

    def pop_events(self) -> list:
        return []


def _trace(g: Graph, config: GameConfig, rev: str, spy: str) -> dict[str, Any]:
    from revspy.core.game import play, trace_to_dict

    result = play(g, config, build_rev_strategy(rev), build_spy_strategy(spy), seed=3)
    return json.loads(json.dumps(trace_to_dict(result)))


@pytest.mark.game
@pytest.mark.tra("Game.Rules")
@pytest.mark.tier(0)
class TestRules:
    """Tests for meetings, legal moves and apply_round."""

    def test_meetings_and_guards(self, p4: Graph) -> None:
        """A meeting needs m tokens and is unguarded without a spy."""
        from revspy.core.game import meetings, unguarded_meetings

        state = GameState(rev=(1, 1, 2, 2), spy=(2,), round=1, phase=Phase.ROUND_END)
        assert meetings(p4, state, 2) == (1, 2)
        assert meetings(p4, state, 3) == ()
        assert unguarded_meetings(p4, state, 2) == (1,)

    def test_legal_moves(self, p4: Graph) -> None:
        """Stay or step to a neighbour."""
        from revspy.core.game import legal_moves

        assert legal_moves(p4, 1) == (0, 1, 2)
        assert legal_moves(p4, 0) == (0, 1)

    def test_apply_round(self, p4: Graph) -> None:
        """A legal round advances the counter."""
        from revspy.core.game import apply_round

        state = GameState(rev=(0,), spy=(3,), round=1, phase=Phase.ROUND_END)
        after = apply_round(p4, state, [1], [3])
        assert after == GameState(rev=(1,), spy=(3,), round=2, phase=Phase.ROUND_END)

    def test_revolutionaries_validated_first(self, p4: Graph) -> None:
        """With both teams illegal the revolutionary token is named."""
        from revspy.core.exceptions import RuleViolationError
        from revspy.core.game import apply_round

        state = GameState(rev=(0,), spy=(3,), round=1, phase=Phase.ROUND_END)
        with pytest.raises(RuleViolationError) as excinfo:
            apply_round(p4, state, [2], [0])
        assert excinfo.value.team == "revolutionaries"
        assert (excinfo.value.source, excinfo.value.target, excinfo.value.round) == (0, 2, 2)

    def test_token_count_must_not_change(self, p4: Graph) -> None:
        """Dropping a spy is a violation."""
        from revspy.core.exceptions import RuleViolationError
        from revspy.core.game import apply_round

        state = GameState(rev=(0,), spy=(3, 3), round=1, phase=Phase.ROUND_END)
        with pytest.raises(RuleViolationError, match="moved 1 tokens, expected 2"):
            apply_round(p4, state, [0], [3])


@pytest.mark.game
@pytest.mark.tra("Game.Play")
@pytest.mark.tier(1)
class TestPlay:
    """Tests for complete simulated games."""

    def test_placement_win(self) -> None:
        """Two revolutionaries together on K2 with no spies win at once."""
        from revspy.core.game import play

        result = play(
            complete_graph(2),
            GameConfig(r=2, m=2, s=0),
            build_rev_strategy("greedy"),
            build_spy_strategy("static"),
        )
        assert result.winner is Outcome.REVOLUTIONARIES
        assert result.winning_round == 1
        assert result.rounds_played == 1
        assert result.rounds[0].unguarded == (0,)

    def test_occupied_board_survives_to_horizon(self) -> None:
        """With every vertex guarded the game runs out the horizon."""
        from revspy.core.game import play

        result = play(
            complete_graph(3),
            GameConfig(r=3, m=2, s=3, horizon=5),
            build_rev_strategy("greedy"),
            build_spy_strategy("occupy-all"),
        )
        assert result.winner is Outcome.SPIES_SURVIVED
        assert result.winning_round is None
        assert result.rounds_played == 5
        assert [rnd.round for rnd in result.rounds] == [1, 2, 3, 4, 5]

    def test_growth_wins_without_spies(self) -> None:
        """The first witness gathers both tokens in round 2."""
        from revspy.core.game import play

        result = play(
            complete_graph(5),
            GameConfig(r=2, m=2, s=0),
            build_rev_strategy("ec-growth"),
            build_spy_strategy("static"),
        )
        assert result.winner is Outcome.REVOLUTIONARIES
        assert result.winning_round == 2
        assert result.rounds[-1].rev == (2, 2)

    def test_stalls_are_recorded(self) -> None:
        """K5 has no witness away from a spy, so every round stalls."""
        from revspy.core.game import play

        result = play(
            complete_graph(5),
            GameConfig(r=3, m=2, s=1, horizon=5),
            build_rev_strategy("ec-growth"),
            build_spy_strategy("static"),
        )
        assert result.winner is Outcome.SPIES_SURVIVED
        events = result.events(EventKind.WITNESS_NOT_FOUND)
        assert [e.round for e in events] == [2, 3, 4, 5]
        assert all(e.team is Team.REVOLUTIONARIES for e in events)

    def test_follow_spies_shadow(self) -> None:
        """With s = r the followers stand exactly on the revolutionaries."""
        from revspy.core.game import play

        result = play(
            path_graph(6),
            GameConfig(r=3, m=2, s=3, horizon=12),
            build_rev_strategy("greedy"),
            build_spy_strategy("follow"),
        )
        assert result.winner is Outcome.SPIES_SURVIVED
        assert all(rnd.spy == rnd.rev for rnd in result.rounds)

    def test_revolutionary_placement_forfeit(self, p4: Graph) -> None:
        """Placing the wrong number of tokens forfeits."""
        from revspy.core.game import play

        result = play(p4, GameConfig(r=2, m=2, s=1), _FixedRevs((0,)), build_spy_strategy("static"))
        assert result.winner is Outcome.SPIES_SURVIVED
        assert result.forfeit is Team.REVOLUTIONARIES
        assert result.events(EventKind.FORFEIT)[0].round == 1

    def test_spy_placement_forfeit(self, p4: Graph) -> None:
        """A spy off the board hands the revolutionaries round 1."""
        from revspy.core.game import play

        result = play(p4, GameConfig(r=1, m=1, s=1), _FixedRevs((0,)), _JumpingSpy((4,), (4,)))
        assert result.winner is Outcome.REVOLUTIONARIES
        assert result.winning_round == 1
        assert result.forfeit is Team.SPIES

    def test_mid_game_forfeit(self, p4: Graph) -> None:
        """A spy jumping two edges forfeits the round it tries."""
        from revspy.core.game import play

        result = play(
            p4,
            GameConfig(r=2, m=2, s=1),
            build_rev_strategy("greedy"),
            _JumpingSpy((1,), (3,)),
        )
        assert result.winner is Outcome.REVOLUTIONARIES
        assert result.winning_round == 2
        assert result.forfeit is Team.SPIES
        forfeit = result.events(EventKind.FORFEIT)
        assert len(forfeit) == 1
        assert forfeit[0].detail["source"] == 1
        assert forfeit[0].detail["target"] == 3

    def test_strategy_parameter_errors_propagate(self, p4: Graph) -> None:
        """occupy-all with too few spies is a usage error, not a forfeit."""
        from revspy.core.exceptions import ParameterError
        from revspy.core.game import play

        with pytest.raises(ParameterError):
            play(
                p4,
                GameConfig(r=2, m=2, s=2),
                build_rev_strategy("greedy"),
                build_spy_strategy("occupy-all"),
            )

    def test_seeded_games_repeat(self, petersen: Graph) -> None:
        """Random strategies replay identically for one seed."""
        from revspy.core.game import play

        config = GameConfig(r=4, m=2, s=1, horizon=30)
        runs = [
            play(petersen, config, build_rev_strategy("random"), build_spy_strategy("chase"), seed=9)
            for _ in range(2)
        ]
        assert runs[0] == runs[1]


@pytest.mark.game
@pytest.mark.tra("Game.Trace")
@pytest.mark.tier(1)
class TestTraces:
    """Tests for trace serialization and replay."""

    def test_dict_layout(self) -> None:
        """Top-level keys and the verdict block."""
        data = _trace(complete_graph(2), GameConfig(r=2, m=2, s=0), "greedy", "static")
        assert set(data) == {"config", "seed", "strategies", "rounds", "verdict"}
        assert data["verdict"] == {"winner": "revolutionaries", "round": 1, "forfeit": None}
        assert data["strategies"] == {"rev": "greedy", "spy": "static"}

    def test_from_dict_restores_result(self) -> None:
        """trace_from_dict inverts trace_to_dict, events included."""
        from revspy.core.game import play, trace_from_dict, trace_to_dict

        result = play(
            complete_graph(5),
            GameConfig(r=3, m=2, s=1, horizon=4),
            build_rev_strategy("ec-growth"),
            build_spy_strategy("static"),
            seed=3,
        )
        data = json.loads(json.dumps(trace_to_dict(result)))
        assert trace_from_dict(data) == result

    def test_malformed_trace(self) -> None:
        """Missing keys become TraceFormatError."""
        from revspy.core.exceptions import TraceFormatError
        from revspy.core.game import trace_from_dict

        with pytest.raises(TraceFormatError, match="malformed"):
            trace_from_dict({"config": {"r": 1}})

    def test_replay_accepts_recorded_games(self, petersen: Graph) -> None:
        """Genuine traces replay to the same verdict."""
        from revspy.core.game import replay, trace_from_dict

        for rev, spy in (("greedy", "static"), ("random", "chase"), ("squads", "follow")):
            data = _trace(petersen, GameConfig(r=4, m=2, s=2, horizon=15), rev, spy)
            again = replay(petersen, data)
            recorded = trace_from_dict(data)
            assert (again.winner, again.winning_round) == (recorded.winner, recorded.winning_round)

    def test_replay_accepts_forfeits(self, p4: Graph) -> None:
        """A forfeit round ends the replay with the recorded verdict."""
        from revspy.core.game import play, replay

        result = play(
            p4,
            GameConfig(r=2, m=2, s=1),
            build_rev_strategy("greedy"),
            _JumpingSpy((1,), (3,)),
        )
        assert replay(p4, result).forfeit is Team.SPIES

    def _shadow_trace(self) -> dict[str, Any]:
        return _trace(path_graph(6), GameConfig(r=3, m=2, s=3, horizon=6), "greedy", "follow")

    def test_replay_rejects_illegal_move(self) -> None:
        """A revolutionary teleporting across the path is caught."""
        from revspy.core.exceptions import TraceFormatError
        from revspy.core.game import replay

        data = self._shadow_trace()
        data["rounds"][1]["rev"][0] = 5
        with pytest.raises(TraceFormatError, match="illegal move"):
            replay(path_graph(6), data)

    def test_replay_rejects_token_count_change(self) -> None:
        """Losing a spy between rounds is caught."""
        from revspy.core.exceptions import TraceFormatError
        from revspy.core.game import replay

        data = self._shadow_trace()
        data["rounds"][2]["spy"].pop()
        with pytest.raises(TraceFormatError, match="token count"):
            replay(path_graph(6), data)

    def test_replay_rejects_wrong_unguarded_set(self) -> None:
        """Claiming an unguarded meeting that is guarded is caught."""
        from revspy.core.exceptions import TraceFormatError
        from revspy.core.game import replay

        data = self._shadow_trace()
        data["rounds"][1]["unguarded"] = [2]
        with pytest.raises(TraceFormatError, match="unguarded meetings"):
            replay(path_graph(6), data)

    def test_replay_rejects_verdict_mismatch(self) -> None:
        """A survival recorded as a win is caught."""
        from revspy.core.exceptions import TraceFormatError
        from revspy.core.game import replay

        data = self._shadow_trace()
        data["verdict"]["winner"] = "revolutionaries"
        with pytest.raises(TraceFormatError, match="verdict mismatch"):
            replay(path_graph(6), data)

    def test_replay_rejects_rounds_after_win(self) -> None:
        """Nothing may follow the winning round."""
        from revspy.core.exceptions import TraceFormatError
        from revspy.core.game import replay

        data = _trace(complete_graph(2), GameConfig(r=2, m=2, s=0), "greedy", "static")
        extra = copy.deepcopy(data["rounds"][0])
        extra["round"] = 2
        data["rounds"].append(extra)
        with pytest.raises(TraceFormatError, match="continues after the win"):
            replay(complete_graph(2), data)

    def test_replay_rejects_bad_numbering(self) -> None:
        """Rounds must be numbered 1, 2, ..."""
        from revspy.core.exceptions import TraceFormatError
        from revspy.core.game import replay

        data = self._shadow_trace()
        data["rounds"][1]["round"] = 7
        with pytest.raises(TraceFormatError, match="recorded as 7"):
            replay(path_graph(6), data)

    def test_replay_rejects_empty_trace(self) -> None:
        """A trace needs at least the placement round."""
        from revspy.core.exceptions import TraceFormatError
        from revspy.core.game import replay

        data = self._shadow_trace()
        data["rounds"] = []
        with pytest.raises(TraceFormatError, match="no rounds"):
            replay(path_graph(6), data)

    def test_forfeit_records_attempt(self, p4: Graph) -> None:
        """The rejected positions travel with the forfeit event."""
        from revspy.core.game import play, replay, trace_to_dict

        result = play(
            p4,
            GameConfig(r=2, m=2, s=1),
            build_rev_strategy("greedy"),
            _JumpingSpy((1,), (3,)),
        )
        assert result.events(EventKind.FORFEIT)[0].detail["attempted"] == [3]
        data = json.loads(json.dumps(trace_to_dict(result)))
        assert replay(p4, data).forfeit is Team.SPIES

    def test_placement_forfeits_replay(self, p4: Graph) -> None:
        """Forfeits during placement replay for either team."""
        from revspy.core.game import play, replay

        revs_short = play(p4, GameConfig(r=2, m=2, s=1), _FixedRevs((0,)), build_spy_strategy("static"))
        spy_off_board = play(p4, GameConfig(r=1, m=1, s=1), _FixedRevs((0,)), _JumpingSpy((4,), (4,)))
        assert replay(p4, revs_short).forfeit is Team.REVOLUTIONARIES
        again = replay(p4, spy_off_board)
        assert (again.winner, again.winning_round) == (Outcome.REVOLUTIONARIES, 1)

    def _forge_spy_forfeit(self, detail: dict[str, Any]) -> dict[str, Any]:
        data = self._shadow_trace()
        data["rounds"] = data["rounds"][:2]
        data["rounds"][1]["spy"] = list(data["rounds"][0]["spy"])
        data["rounds"][1]["events"] = [
            {"kind": "forfeit", "team": "spies", "round": 2, "detail": detail}
        ]
        data["verdict"] = {"winner": "revolutionaries", "round": 2, "forfeit": "spies"}
        return data

    def test_replay_rejects_forfeit_without_attempt(self) -> None:
        """A forfeit that does not say what was attempted cannot be checked."""
        from revspy.core.exceptions import TraceFormatError
        from revspy.core.game import replay

        data = self._forge_spy_forfeit({})
        with pytest.raises(TraceFormatError, match="does not record the attempted move"):
            replay(path_graph(6), data)

    def test_replay_rejects_legal_forfeit(self) -> None:
        """Standing still is not a rule violation."""
        from revspy.core.exceptions import TraceFormatError
        from revspy.core.game import replay

        data = self._shadow_trace()
        staying = list(data["rounds"][0]["spy"])
        data = self._forge_spy_forfeit({"attempted": staying})
        with pytest.raises(TraceFormatError, match="is a legal move"):
            replay(path_graph(6), data)

    def test_replay_rejects_moves_in_forfeit_round(self) -> None:
        """The forfeiting team keeps its previous positions."""
        from revspy.core.exceptions import TraceFormatError
        from revspy.core.game import replay

        before = self._shadow_trace()["rounds"][0]["spy"]
        far = 5 if before[0] <= 3 else 0
        data = self._forge_spy_forfeit({"attempted": [far] * 3})
        data["rounds"][1]["spy"] = [far] * 3
        with pytest.raises(TraceFormatError, match="spies moved in a forfeit round"):
            replay(path_graph(6), data)

    def test_replay_rejects_truncated_survival(self) -> None:
        """A survival must run to the horizon."""
        from revspy.core.exceptions import TraceFormatError
        from revspy.core.game import replay

        data = self._shadow_trace()
        assert data["verdict"]["winner"] == "spies-survived"
        data["rounds"] = data["rounds"][:2]
        with pytest.raises(TraceFormatError, match="ends before the horizon"):
            replay(path_graph(6), data)

    def test_replay_rejects_rounds_past_horizon(self) -> None:
        """No trace is longer than its horizon."""
        from revspy.core.exceptions import TraceFormatError
        from revspy.core.game import replay

        data = self._shadow_trace()
        data["config"]["horizon"] = 3
        with pytest.raises(TraceFormatError, match="horizon is 3"):
            replay(path_graph(6), data)

    def _growth_trace(self) -> dict[str, Any]:
        return _trace(complete_graph(5), GameConfig(r=2, m=2, s=0), "ec-growth", "static")

    def test_witness_events_recorded(self) -> None:
        """Each growth move records its query, witness and movers."""
        data = self._growth_trace()
        events = data["rounds"][1]["events"]
        assert [e["kind"] for e in events] == ["witness"]
        assert events[0]["detail"] == {
            "query": {"variant": "ec", "A": [0, 1], "B": [], "j": 1},
            "witness": 2,
            "movers": [0, 1],
        }

    def test_replay_rejects_forged_witness(self) -> None:
        """A recorded witness must satisfy its own query."""
        from revspy.core.exceptions import TraceFormatError
        from revspy.core.game import replay

        data = self._growth_trace()
        data["rounds"][1]["events"][0]["detail"]["witness"] = 0
        with pytest.raises(TraceFormatError, match="does not satisfy its query"):
            replay(complete_graph(5), data)

    def test_replay_rejects_malformed_witness(self) -> None:
        """A witness event without its query cannot be checked."""
        from revspy.core.exceptions import TraceFormatError
        from revspy.core.game import replay

        data = self._growth_trace()
        del data["rounds"][1]["events"][0]["detail"]["query"]
        with pytest.raises(TraceFormatError, match="malformed witness event"):
            replay(complete_graph(5), data)

    def test_growth_witnesses_end_unguarded(self, dense_gnp: Graph) -> None:
        """A j = 1 witness kept away from every spy is unguarded at RoundEnd."""
        from revspy.core.game import play, replay

        checked = 0
        for spy in ("static", "follow", "chase", "three-teams"):
            result = play(
                dense_gnp,
                GameConfig(r=6, m=3, s=1, horizon=20),
                build_rev_strategy("ec-growth"),
                build_spy_strategy(spy),
            )
            replay(dense_gnp, result)
            for event in result.events(EventKind.WITNESS):
                before = result.rounds[event.round - 2]
                after = result.rounds[event.round - 1]
                z = event.detail["witness"]
                assert event.detail["query"]["j"] == 1
                assert all(after.rev[t] == z for t in event.detail["movers"])
                if set(event.detail["query"]["B"]) == set(before.spy):
                    assert z not in after.spy
                    checked += 1
        assert checked > 0
