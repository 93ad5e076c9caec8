"""Constants of the three-team spy strategy."""

from __future__ import annotations

import math

from revspy.core.exceptions import ParameterError
from revspy.core.graph import ell_n, estimate_eta
from revspy.core.models import SpyTeamParams


def team_delta(eta: float) -> float:
    """δ = (1 - η + sqrt(η² + 2η + 5)) / 2."""
    return (1.0 - eta + math.sqrt(eta * eta + 2.0 * eta + 5.0)) / 2.0


def spy_team_parameters(n: int, p: float, eps: float, r: int, m: int) -> SpyTeamParams:
    """Team sizes and constants for the three-team spy strategy.

    Example:
        >>> params = spy_team_parameters(1000, 0.5, 0.1, 500, 10)
        >>> params.regular_size, params.team1_size
        (50, 28)
    """
    if eps <= 0:
        raise ParameterError("eps", eps, "must be > 0")
    if r < 1:
        raise ParameterError("r", r, "must be >= 1")
    if m < 1:
        raise ParameterError("m", m, "must be >= 1")
    elln = ell_n(n, p)
    eta = estimate_eta(n, p)
    delta = team_delta(eta)
    gamma = 1.0 + eta + delta + eps
    team = math.ceil(gamma * elln)
    return SpyTeamParams(
        eta=eta,
        eps=eps,
        delta=delta,
        gamma=gamma,
        elln=elln,
        team1_size=team,
        team2_size=team,
        regular_size=r // m,
    )


def spy_upper_bound(n: int, p: float, r: int, m: int, eps: float) -> float:
    """r/m + 2(2 + sqrt 2 + eps)𝕃n, the spy count that always suffices a.a.s."""
    if eps <= 0:
        raise ParameterError("eps", eps, "must be > 0")
    return r / m + 2.0 * (2.0 + math.sqrt(2.0) + eps) * ell_n(n, p)
