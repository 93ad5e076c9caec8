"""Core domain models for revspy.

These models are pure Python dataclasses with no I/O dependencies. They
describe property queries and reports, game configurations, positions and
traces, spy-team constants, regime predictions and sweep specifications.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

from revspy.core.exceptions import InvalidQueryError, ParameterError


# ---------------------------------------------------------------------------
# Property checking
# ---------------------------------------------------------------------------


class ECVariant(StrEnum):
    """The four existentially-closed adjacency properties.

    ``ec``       some z is adjacent to all of A and to none of B.
    ``one-ec``   some z is adjacent to v, to at least one of A, to none of B.
    ``ec-j``     as ``ec`` with adjacency replaced by distance <= j and
                 non-adjacency by distance >= j + 1.
    ``one-ec-j`` the same relaxation of ``one-ec``.
    """

    EC = "ec"
    ONE_EC = "one-ec"
    EC_J = "ec-j"
    ONE_EC_J = "one-ec-j"

    @property
    def has_anchor(self) -> bool:
        """Whether the variant needs the distinguished vertex v."""
        return self in (ECVariant.ONE_EC, ECVariant.ONE_EC_J)

    @property
    def uses_distance(self) -> bool:
        """Whether the variant takes a radius j other than 1."""
        return self in (ECVariant.EC_J, ECVariant.ONE_EC_J)

    def label(self, l: int, k: int, j: int = 1) -> str:  # noqa: E741
        """Human-readable name with parameters, e.g. ``(1,2,3)_2-e.c.``."""
        head = f"(1,{l},{k})" if self.has_anchor else f"({l},{k})"
        radius = f"_{j}" if self.uses_distance else ""
        return f"{head}{radius}-e.c."


@dataclass(frozen=True, slots=True)
class ECQuery:
    """One e.c. witness query.

    Attributes:
        variant: Which property the query belongs to.
        A: Sorted vertex ids the witness must be close to (all of them, or
            at least one for the anchored variants).
        B: Sorted vertex ids the witness must stay away from.
        j: Radius; always 1 for the non-distance variants.
        v: Anchor vertex, required exactly for the anchored variants.

    Example:
        >>> ECQuery(ECVariant.EC, A=(0,), B=(1,)).k
        1
    """

    variant: ECVariant
    A: tuple[int, ...]
    B: tuple[int, ...] = ()
    j: int = 1
    v: int | None = None

    def __post_init__(self) -> None:
        """Validate sizes, radius and pairwise disjointness."""
        if not self.A:
            raise InvalidQueryError("A must contain at least one vertex (l >= 1)")
        if self.j < 1:
            raise InvalidQueryError(f"radius j must be >= 1, got {self.j}")
        if not self.variant.uses_distance and self.j != 1:
            raise InvalidQueryError(f"variant {self.variant} only allows j = 1")
        if self.variant.has_anchor and self.v is None:
            raise InvalidQueryError(f"variant {self.variant} requires an anchor vertex v")
        if not self.variant.has_anchor and self.v is not None:
            raise InvalidQueryError(f"variant {self.variant} takes no anchor vertex")
        if len(set(self.A)) != len(self.A) or len(set(self.B)) != len(self.B):
            raise InvalidQueryError("A and B must not repeat vertices")
        if set(self.A) & set(self.B):
            raise InvalidQueryError("A and B must be disjoint")
        if self.v is not None and (self.v in self.A or self.v in self.B):
            raise InvalidQueryError("the anchor v must lie outside A and B")

    @property
    def l(self) -> int:  # noqa: E743
        """|A|."""
        return len(self.A)

    @property
    def k(self) -> int:
        """|B|."""
        return len(self.B)

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation."""
        out: dict[str, Any] = {
            "variant": str(self.variant),
            "A": list(self.A),
            "B": list(self.B),
            "j": self.j,
        }
        if self.v is not None:
            out["v"] = self.v
        return out


class ModeKind(StrEnum):
    """How a property was evaluated."""

    EXACT = "exact"
    SAMPLED = "sampled"
    CERTIFIED = "certified-sufficient"


@dataclass(frozen=True, slots=True)
class CheckMode:
    """Evaluation mode of a checker, with the sampling parameters if any.

    Example:
        >>> CheckMode.sampled(100, seed=6).label
        'sampled(100, 6)'
    """

    kind: ModeKind
    trials: int | None = None
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.kind is ModeKind.SAMPLED:
            if self.trials is None or self.trials < 1:
                raise ParameterError("trials", self.trials, "must be >= 1")
            if self.seed is None:
                raise ParameterError("seed", self.seed, "must be given for sampling")

    @classmethod
    def exact(cls) -> CheckMode:
        """Exhaustive enumeration."""
        return cls(ModeKind.EXACT)

    @classmethod
    def sampled(cls, trials: int, seed: int) -> CheckMode:
        """Seeded random queries."""
        return cls(ModeKind.SAMPLED, trials, seed)

    @classmethod
    def certified(cls) -> CheckMode:
        """A sufficient condition that implies the property."""
        return cls(ModeKind.CERTIFIED)

    @property
    def label(self) -> str:
        """Rendered mode, e.g. ``exact`` or ``sampled(100, 6)``."""
        if self.kind is ModeKind.SAMPLED:
            return f"sampled({self.trials}, {self.seed})"
        return str(self.kind)


class Verdict(StrEnum):
    """Outcome of a property check."""

    HOLDS = "holds"
    FAILS = "fails"
    REFUTED = "refuted-by-sample"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True, slots=True)
class PropertyReport:
    """Outcome of a property check.

    Attributes:
        property: Description of the property with its parameters.
        mode: How it was evaluated.
        verdict: The outcome.
        witness: The counterexample (or certificate) when there is one.
        stats: Counters such as the number of queries checked.
        measured: Measured quantities, e.g. the largest intersection seen.
        vacuous: True when the property holds for trivial reasons.
    """

    property: str
    mode: CheckMode
    verdict: Verdict
    witness: dict[str, Any] | None = None
    stats: dict[str, int] = field(default_factory=dict)
    measured: dict[str, float] = field(default_factory=dict)
    vacuous: bool = False

    def __post_init__(self) -> None:
        """Enforce the verdict/witness/mode consistency rules."""
        if self.verdict in (Verdict.FAILS, Verdict.REFUTED) and self.witness is None:
            raise ValueError(f"verdict {self.verdict} requires a witness")
        if self.mode.kind is ModeKind.EXACT and self.verdict not in (
            Verdict.HOLDS,
            Verdict.FAILS,
        ):
            raise ValueError("exact checks must end in holds or fails")
        if not self.vacuous and self.mode.kind is ModeKind.SAMPLED and self.verdict in (
            Verdict.HOLDS,
            Verdict.FAILS,
        ):
            raise ValueError("sampled checks can only refute or stay inconclusive")

    @property
    def passed(self) -> bool:
        """True unless the property was shown to fail."""
        return self.verdict in (Verdict.HOLDS, Verdict.INCONCLUSIVE)

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation with the fixed field names."""
        return {
            "property": self.property,
            "mode": self.mode.label,
            "verdict": str(self.verdict),
            "witness": self.witness,
            "stats": dict(self.stats),
            "measured": dict(self.measured),
            "vacuous": self.vacuous,
        }


@dataclass(frozen=True, slots=True)
class ExpansionReport:
    """Measured neighbourhood expansion of a vertex set.

    ``ratio_pass`` and ``difference_pass`` are None when no verdict is
    asserted (outside the regime, or no extra vertex supplied).
    """

    S: tuple[int, ...]
    radius: int
    d: float
    size: int
    expected: float
    ratio: float
    tol: float
    out_of_regime: bool
    ratio_pass: bool | None
    x: int | None = None
    difference: int | None = None
    difference_threshold: float | None = None
    difference_pass: bool | None = None

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation."""
        return {
            "property": f"expansion(i={self.radius})",
            "S": list(self.S),
            "radius": self.radius,
            "d": self.d,
            "size": self.size,
            "expected": self.expected,
            "ratio": self.ratio,
            "tol": self.tol,
            "out_of_regime": self.out_of_regime,
            "ratio_pass": self.ratio_pass,
            "x": self.x,
            "difference": self.difference,
            "difference_threshold": self.difference_threshold,
            "difference_pass": self.difference_pass,
        }


@dataclass(frozen=True, slots=True)
class MatchingSetCandidate:
    """A candidate matching set and how far it got towards certification.

    Attributes:
        vertices: The candidate set S.
        certified: Whether a certificate was established.
        certificate: "degree", "pair" or None.
        deficient: Outside vertices that had too few S-neighbours.
        attempts: Number of randomized starts consumed.
    """

    vertices: tuple[int, ...]
    certified: bool
    certificate: str | None
    deficient: tuple[int, ...] = ()
    attempts: int = 1


# ---------------------------------------------------------------------------
# Game
# ---------------------------------------------------------------------------


class Team(StrEnum):
    """The two sides."""

    REVOLUTIONARIES = "revolutionaries"
    SPIES = "spies"


class Phase(StrEnum):
    """Position in the round structure."""

    REV_PLACE = "rev-place"
    SPY_PLACE = "spy-place"
    REV_MOVE = "rev-move"
    SPY_MOVE = "spy-move"
    ROUND_END = "round-end"


class Outcome(StrEnum):
    """Result label of a simulated game."""

    REVOLUTIONARIES = "revolutionaries"
    SPIES_SURVIVED = "spies-survived"


class EventKind(StrEnum):
    """Typed trace events."""

    MATCHING_FAILED = "matching-failed"
    WITNESS = "witness"
    WITNESS_NOT_FOUND = "witness-not-found"
    FORFEIT = "forfeit"


@dataclass(frozen=True, slots=True)
class GameConfig:
    """Game parameters.

    Attributes:
        r: Number of revolutionaries.
        m: Meeting size.
        s: Number of spies.
        horizon: Maximum number of rounds a simulation plays.
    """

    r: int
    m: int
    s: int
    horizon: int = 100

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ParameterError("r", self.r, "must be >= 1")
        if self.m < 1:
            raise ParameterError("m", self.m, "must be >= 1")
        if self.s < 0:
            raise ParameterError("s", self.s, "must be >= 0")
        if self.horizon < 1:
            raise ParameterError("horizon", self.horizon, "must be >= 1")

    @property
    def vacuous(self) -> bool:
        """No meeting of size m can ever form."""
        return self.m > self.r

    def to_dict(self) -> dict[str, int]:
        """JSON-ready representation."""
        return {"r": self.r, "m": self.m, "s": self.s, "horizon": self.horizon}


@dataclass(frozen=True, slots=True)
class GameState:
    """A full position.

    Positions are token-indexed: ``rev[i]`` is where revolutionary i stands.
    The multiset view the rules care about is :meth:`rev_counts`.
    """

    rev: tuple[int, ...]
    spy: tuple[int, ...]
    round: int
    phase: Phase

    def rev_counts(self) -> Counter[int]:
        """Revolutionary multiplicity per vertex."""
        return Counter(self.rev)

    def spy_counts(self) -> Counter[int]:
        """Spy multiplicity per vertex."""
        return Counter(self.spy)


@dataclass(frozen=True, slots=True)
class TraceEvent:
    """A typed event recorded in a trace (witness, shortfall or forfeit)."""

    kind: EventKind
    team: Team
    round: int
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation."""
        return {
            "kind": str(self.kind),
            "team": str(self.team),
            "round": self.round,
            "detail": dict(self.detail),
        }


@dataclass(frozen=True, slots=True)
class TraceRound:
    """Positions at one RoundEnd and what happened during that round."""

    round: int
    rev: tuple[int, ...]
    spy: tuple[int, ...]
    unguarded: tuple[int, ...]
    events: tuple[TraceEvent, ...] = ()


@dataclass(frozen=True, slots=True)
class GameResult:
    """Outcome and full trace of a simulated game.

    Attributes:
        config: The game parameters.
        winner: Revolutionaries or SpiesSurvived.
        winning_round: Round of the first unguarded meeting (or of the
            opponent's forfeit).
        rounds: One entry per RoundEnd, starting with round 1.
        forfeit: The team that broke the rules, if any.
        seed: The game seed.
        rev_strategy: Name of the revolutionary strategy.
        spy_strategy: Name of the spy strategy.
    """

    config: GameConfig
    winner: Outcome
    winning_round: int | None
    rounds: tuple[TraceRound, ...]
    forfeit: Team | None = None
    seed: int = 0
    rev_strategy: str = ""
    spy_strategy: str = ""

    @property
    def rounds_played(self) -> int:
        """Number of RoundEnds recorded."""
        return len(self.rounds)

    def events(self, kind: EventKind | None = None) -> list[TraceEvent]:
        """All trace events, optionally filtered by kind."""
        return [
            e for rnd in self.rounds for e in rnd.events if kind is None or e.kind is kind
        ]

    @property
    def matching_failures(self) -> int:
        """Number of MatchingFailed events."""
        return len(self.events(EventKind.MATCHING_FAILED))


# ---------------------------------------------------------------------------
# Strategies and experiments
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SpyTeamParams:
    """Constants of the three-team spy strategy.

    Attributes:
        eta: Density exponent estimate in [0, 1].
        eps: Slack > 0.
        delta: (1 - eta + sqrt(eta^2 + 2 eta + 5)) / 2.
        gamma: 1 + eta + delta + eps.
        elln: 𝕃n.
        team1_size: ceil(gamma 𝕃n).
        team2_size: ceil(gamma 𝕃n).
        regular_size: floor(r / m).
    """

    eta: float
    eps: float
    delta: float
    gamma: float
    elln: float
    team1_size: int
    team2_size: int
    regular_size: int

    @property
    def total(self) -> int:
        """Total spies the strategy needs."""
        return self.regular_size + self.team1_size + self.team2_size

    @property
    def matching_size(self) -> int:
        """|A| = ceil(gamma 𝕃n)."""
        return self.team1_size

    @property
    def hall_size(self) -> int:
        """ceil(delta 𝕃n), the largest T the matching set must serve."""
        return math.ceil(self.delta * self.elln)


class Regime(StrEnum):
    """Predicted-value regimes."""

    EXACT = "exact r-m+1"
    ASYMPTOTIC_GAP = "(1+o(1))(r-m)"
    LOG_BAND = "Theta(Ln)"
    RATIO = "(1+o(1)) r/m"
    OUT_OF_RANGE = "out-of-range"


@dataclass(frozen=True, slots=True)
class RegimePrediction:
    """Which case a parameter tuple falls into and what it predicts.

    Attributes:
        regime: The regime label.
        source: Which statement the prediction comes from (e.g. "dense-ec").
        prediction: Numeric predicted spy number (None when out of range).
        formula: The predicted formula as text.
        eta_hat: Estimated density exponent.
        elln: 𝕃n.
        omega: The slowly-growing function value used for the gates.
        lower: Predicted lower bound on the spy number.
        upper: Predicted upper bound on the spy number.
        etas: Per-parametrization exponents (eta3, eta2, eta6).
        band: Sparse-regime band edges g and f (as exponents of n).
        reason: Which gate decided.
    """

    regime: Regime
    source: str
    prediction: float | None
    formula: str
    eta_hat: float
    elln: float
    omega: float
    lower: float
    upper: float
    etas: dict[str, float] = field(default_factory=dict)
    band: dict[str, float] = field(default_factory=dict)
    reason: str = ""

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation."""
        return {
            "regime": str(self.regime),
            "source": self.source,
            "prediction": self.prediction,
            "formula": self.formula,
            "eta_hat": self.eta_hat,
            "elln": self.elln,
            "omega": self.omega,
            "lower": self.lower,
            "upper": self.upper,
            "etas": dict(self.etas),
            "band": dict(self.band),
            "reason": self.reason,
        }


class CellMethod(StrEnum):
    """Per-cell evidence collection in a sweep."""

    EXACT = "exact"
    CERTIFIED = "certified"
    SIMULATE = "simulate"


@dataclass(frozen=True, slots=True)
class SweepSpec:
    """Grid of parameters for a Monte Carlo sweep.

    Every combination of ``n``, ``p``, ``r`` and ``m`` is one cell and gets
    ``trials`` seeded graphs.
    """

    n: tuple[int, ...]
    p: tuple[float, ...]
    r: tuple[int, ...]
    m: tuple[int, ...]
    trials: int = 1
    seed: int = 0
    methods: tuple[CellMethod, ...] = (CellMethod.CERTIFIED,)
    omega: float | None = None
    horizon: int = 200
    s_max: int = 3
    games: int = 1
    spy: str = "three-teams:eps=0.1"
    rev: str = "ec-growth:j=1"
    eps: float = 0.1
    j_max: int = 1
    l_max: int = 1

    def __post_init__(self) -> None:
        for name in ("n", "p", "r", "m"):
            if not getattr(self, name):
                raise ParameterError(name, getattr(self, name), "grid must be non-empty")
        if self.trials < 1:
            raise ParameterError("trials", self.trials, "must be >= 1")
        if self.games < 1:
            raise ParameterError("games", self.games, "must be >= 1")
        if self.horizon < 1:
            raise ParameterError("horizon", self.horizon, "must be >= 1")
        if self.s_max < 0:
            raise ParameterError("s_max", self.s_max, "must be >= 0")
        if self.j_max < 1:
            raise ParameterError("j_max", self.j_max, "must be >= 1")
        if self.l_max < 1:
            raise ParameterError("l_max", self.l_max, "must be >= 1")
        if not self.methods:
            raise ParameterError("method", self.methods, "must name at least one method")

    def cells(self) -> list[tuple[int, float, int, int]]:
        """All (n, p, r, m) cells in deterministic grid order."""
        return [
            (n, p, r, m) for n in self.n for p in self.p for r in self.r for m in self.m
        ]
