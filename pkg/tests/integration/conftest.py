"""Shared fixtures for integration tests."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Protocol

import pytest
from jsonschema import Draft202012Validator
from typer.testing import CliRunner

from revspy.core.graph import save_graph
from revspy.schemas import load_schema


class SchemaCheck(Protocol):
    def __call__(self, name: str, payload: Any) -> None: ...


@pytest.fixture
def runner() -> CliRunner:
    """A fresh CliRunner per test."""
    return CliRunner()


@pytest.fixture
def validate() -> SchemaCheck:
    """Validate a payload against one of the shipped schemas."""

    def check(name: str, payload: Any) -> None:
        schema = load_schema(name)
        Draft202012Validator.check_schema(schema)
        Draft202012Validator(schema).validate(payload)

    return check


@pytest.fixture
def petersen_file(tmp_path: Path, petersen) -> Path:
    """The Petersen graph written as an edge list."""
    path = tmp_path / "petersen.txt"
    path.write_text(save_graph(petersen), encoding="utf-8")
    return path


@pytest.fixture
def c5_file(tmp_path: Path, c5) -> Path:
    """The 5-cycle written as an edge list."""
    path = tmp_path / "c5.txt"
    path.write_text(save_graph(c5), encoding="utf-8")
    return path
