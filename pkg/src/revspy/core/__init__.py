"""Core domain module for revspy.

Graphs, property checkers, the game engine, strategies, the exact solver
and the experiment harness. Pure Python plus numpy; no CLI or table
dependencies, so everything here can be tested in isolation.
"""

from revspy.core.graph import Graph, GnpParams, LazyGnp, sample_gnp
from revspy.core.models import ECQuery, ECVariant, GameConfig, GameState, PropertyReport
from revspy.core.ports import ExecutorPort, RevolutionaryStrategy, SpyStrategy


__all__ = [
    "ECQuery",
    "ECVariant",
    "ExecutorPort",
    "GameConfig",
    "GameState",
    "GnpParams",
    "Graph",
    "LazyGnp",
    "PropertyReport",
    "RevolutionaryStrategy",
    "SpyStrategy",
    "sample_gnp",
]
