"""revspy - Revolutionaries and Spies on random graphs.

Property checkers for G(n,p), a referee for the game, spy and
revolutionary strategies, an exact solver for small instances and a
sweep harness comparing predicted spy numbers with measured ones.

Example:
    >>> from revspy import GameConfig, GnpParams, build_rev_strategy, build_spy_strategy, play, sample_gnp
    >>> g = sample_gnp(GnpParams(n=30, p=0.5, seed=7))
    >>> result = play(
    ...     g,
    ...     GameConfig(r=6, m=3, s=4, horizon=20),
    ...     build_rev_strategy("ec-growth:j=1"),
    ...     build_spy_strategy("three-teams:eps=0.1"),
    ...     seed=3,
    ... )
    >>> result.rounds_played >= 1
    True
"""

from revspy.adapters.executor import SynchronousExecutor, ThreadPoolExecutorAdapter, make_executor
from revspy.config import Settings, load_sweep_spec, parse_sweep_spec
from revspy.core.exceptions import (
    BudgetExceededError,
    GraphFormatError,
    InvalidQueryError,
    InvalidVertexError,
    ParameterError,
    RevSpyError,
    RuleViolationError,
    StrategySpecError,
    SweepSpecError,
    TraceFormatError,
)
from revspy.core.experiments import (
    certified_lower_bound,
    classify_regime,
    ec_threshold_scan,
    evidence_lower_bound,
    run_sweep,
)
from revspy.core.game import play, replay, trace_from_dict, trace_to_dict
from revspy.core.graph import Graph, GnpParams, LazyGnp, load_graph, sample_gnp, save_graph
from revspy.core.models import (
    CheckMode,
    ECQuery,
    ECVariant,
    GameConfig,
    GameResult,
    GameState,
    PropertyReport,
    Regime,
    RegimePrediction,
    SweepSpec,
    Verdict,
)
from revspy.core.ports import (
    ExecutorPort,
    NullProgressReporter,
    ProgressCallback,
    ProgressReporter,
    RevolutionaryStrategy,
    SpyStrategy,
)
from revspy.core.properties import check_ec, find_witness
from revspy.core.solver import solve, spy_number_exact, verify_trivial_bounds
from revspy.core.strategies import build_rev_strategy, build_spy_strategy
from revspy.progress import RichProgressReporter


__version__ = "0.3.0"

__all__ = [
    "BudgetExceededError",
    "CheckMode",
    "ECQuery",
    "ECVariant",
    "ExecutorPort",
    "GameConfig",
    "GameResult",
    "GameState",
    "GnpParams",
    "Graph",
    "GraphFormatError",
    "InvalidQueryError",
    "InvalidVertexError",
    "LazyGnp",
    "NullProgressReporter",
    "ParameterError",
    "ProgressCallback",
    "ProgressReporter",
    "PropertyReport",
    "Regime",
    "RegimePrediction",
    "RevSpyError",
    "RevolutionaryStrategy",
    "RichProgressReporter",
    "RuleViolationError",
    "Settings",
    "SpyStrategy",
    "StrategySpecError",
    "SweepSpec",
    "SweepSpecError",
    "SynchronousExecutor",
    "ThreadPoolExecutorAdapter",
    "TraceFormatError",
    "Verdict",
    "__version__",
    "build_rev_strategy",
    "build_spy_strategy",
    "certified_lower_bound",
    "check_ec",
    "classify_regime",
    "ec_threshold_scan",
    "evidence_lower_bound",
    "find_witness",
    "load_graph",
    "load_sweep_spec",
    "make_executor",
    "parse_sweep_spec",
    "play",
    "replay",
    "run_sweep",
    "sample_gnp",
    "save_graph",
    "solve",
    "spy_number_exact",
    "trace_from_dict",
    "trace_to_dict",
    "verify_trivial_bounds",
]
