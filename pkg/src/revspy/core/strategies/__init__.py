"""Strategy registry: build strategies from ``name:key=value,...`` specs."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from revspy.core.exceptions import ParameterError, StrategySpecError
from revspy.core.strategies.params import spy_team_parameters, spy_upper_bound, team_delta
from revspy.core.strategies.revolutionaries import (
    ECGrowthRevolutionaries,
    GreedyRevolutionaries,
    OneECRevolutionaries,
    RandomWalkRevolutionaries,
    SquadRevolutionaries,
)
from revspy.core.strategies.spies import (
    ChaseSpies,
    FollowSpies,
    OccupyAllSpies,
    StaticSpies,
    ThreeTeamSpies,
)


if TYPE_CHECKING:
    from collections.abc import Callable

    from revspy.core.ports import RevolutionaryStrategy, SpyStrategy


# name -> (factory, {parameter: converter})
_REV: dict[str, tuple[Callable[..., Any], dict[str, Callable[[str], Any]]]] = {
    "ec-growth": (ECGrowthRevolutionaries, {"j": int}),
    "one-ec": (OneECRevolutionaries, {"l": int, "j": int}),
    "greedy": (GreedyRevolutionaries, {}),
    "squads": (SquadRevolutionaries, {}),
    "random": (RandomWalkRevolutionaries, {}),
}

_SPY: dict[str, tuple[Callable[..., Any], dict[str, Callable[[str], Any]]]] = {
    "three-teams": (
        ThreeTeamSpies,
        {"eps": float, "p": float, "retries": int, "repairs": int},
    ),
    "follow": (FollowSpies, {}),
    "static": (StaticSpies, {}),
    "chase": (ChaseSpies, {}),
    "occupy-all": (OccupyAllSpies, {}),
}


def parse_strategy_spec(spec: str) -> tuple[str, dict[str, str]]:
    """Split ``name:k=v,k=v`` into the name and raw parameters.

    Example:
        >>> parse_strategy_spec("one-ec:l=2,j=1")
        ('one-ec', {'l': '2', 'j': '1'})
    """
    name, _, rest = spec.strip().partition(":")
    if not name:
        raise StrategySpecError(spec, "missing strategy name")
    params: dict[str, str] = {}
    for item in filter(None, (part.strip() for part in rest.split(","))):
        key, sep, value = item.partition("=")
        if not sep or not key.strip() or not value.strip():
            raise StrategySpecError(spec, f"expected key=value, got '{item}'")
        if key.strip() in params:
            raise StrategySpecError(spec, f"duplicate key '{key.strip()}'")
        params[key.strip()] = value.strip()
    return name, params


def _build(
    spec: str,
    registry: dict[str, tuple[Callable[..., Any], dict[str, Callable[[str], Any]]]],
    settings: dict[str, Any],
) -> Any:
    name, raw = parse_strategy_spec(spec)
    if name not in registry:
        raise StrategySpecError(spec, f"unknown strategy '{name}'", sorted(registry))
    factory, accepted = registry[name]
    kwargs = {k: v for k, v in settings.items() if k in accepted}
    for key, value in raw.items():
        if key not in accepted:
            known = ", ".join(sorted(accepted)) or "none"
            raise StrategySpecError(spec, f"unknown parameter '{key}' (accepted: {known})")
        try:
            kwargs[key] = accepted[key](value)
        except ValueError:
            raise StrategySpecError(spec, f"bad value for '{key}': {value}") from None
    try:
        return factory(**kwargs)
    except ParameterError as e:
        raise StrategySpecError(spec, str(e)) from e


def build_rev_strategy(spec: str) -> RevolutionaryStrategy:
    """Revolutionary strategy from a spec such as ``ec-growth:j=2``.

    Raises:
        StrategySpecError: Unknown name, unknown key or bad value.
    """
    strategy: RevolutionaryStrategy = _build(spec, _REV, {})
    return strategy


def build_spy_strategy(spec: str, **settings: Any) -> SpyStrategy:
    """Spy strategy from a spec such as ``three-teams:eps=0.1``.

    ``settings`` supplies defaults (for example ``retries`` and ``repairs``
    from the configuration) that the spec string may override; keys the
    strategy does not accept are ignored.

    Raises:
        StrategySpecError: Unknown name, unknown key or bad value.
    """
    strategy: SpyStrategy = _build(spec, _SPY, settings)
    return strategy


def rev_strategy_names() -> list[str]:
    """Registered revolutionary strategy names."""
    return sorted(_REV)


def spy_strategy_names() -> list[str]:
    """Registered spy strategy names."""
    return sorted(_SPY)


__all__ = [
    "ChaseSpies",
    "ECGrowthRevolutionaries",
    "FollowSpies",
    "GreedyRevolutionaries",
    "OccupyAllSpies",
    "OneECRevolutionaries",
    "RandomWalkRevolutionaries",
    "SquadRevolutionaries",
    "StaticSpies",
    "ThreeTeamSpies",
    "build_rev_strategy",
    "build_spy_strategy",
    "parse_strategy_spec",
    "rev_strategy_names",
    "spy_strategy_names",
    "spy_team_parameters",
    "spy_upper_bound",
    "team_delta",
]
