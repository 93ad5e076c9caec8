"""Pytest configuration and shared fixtures.

This module registers custom markers for CI job separation and provides
small graphs whose properties are known by hand.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator

import pytest

from revspy.core.graph import (
    Graph,
    GnpParams,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    sample_gnp,
)


def pytest_configure(config: pytest.Config) -> None:
    """Register custom markers."""
    config.addinivalue_line("markers", "core: Graph core, models, ports (no I/O)")
    config.addinivalue_line("markers", "properties: Property checkers (e.c., Hall, expansion)")
    config.addinivalue_line("markers", "game: Game engine and strategies")
    config.addinivalue_line("markers", "solver: Exact solver")
    config.addinivalue_line("markers", "experiments: Regime classifier and sweeps")
    config.addinivalue_line("markers", "progress: Rich progress integration")
    config.addinivalue_line("markers", "cli: CLI tests")
    config.addinivalue_line("markers", "e2e: End-to-end tests")
    config.addinivalue_line(
        "markers", "tra: Test Responsibility Anchor (TRA) - namespace.Anchor format"
    )
    config.addinivalue_line(
        "markers",
        "tier: Test tier for CI job separation (0=instant, 1=fast, 2=standard, 3=slow, 4=manual)",
    )
    config.addinivalue_line("markers", "property: Property-based tests using hypothesis")


@pytest.fixture
def petersen() -> Graph:
    """The Petersen graph: 3-regular, girth 5, (1,2)-e.c. but not (1,3)-e.c."""
    return petersen_graph()


@pytest.fixture
def c5() -> Graph:
    """The 5-cycle."""
    return cycle_graph(5)


@pytest.fixture
def p4() -> Graph:
    """The path 0-1-2-3."""
    return path_graph(4)


@pytest.fixture
def k4() -> Graph:
    """The complete graph on four vertices."""
    return complete_graph(4)


@pytest.fixture
def k23() -> Graph:
    """K_{2,3} with parts {0, 1} and {2, 3, 4}."""
    return complete_bipartite_graph(2, 3)


@pytest.fixture
def dense_gnp() -> Graph:
    """A seeded G(40, 0.5) sample."""
    return sample_gnp(GnpParams(n=40, p=0.5, seed=11))


@pytest.fixture(autouse=True)
def _restore_revspy_logger() -> Iterator[None]:
    """CLI commands reconfigure the 'revspy' logger; undo that after each test."""
    logger = logging.getLogger("revspy")
    handlers, level, propagate = list(logger.handlers), logger.level, logger.propagate
    yield
    logger.handlers[:] = handlers
    logger.setLevel(level)
    logger.propagate = propagate
