"""JSON schema files for every machine-readable output.

Example:
    >>> load_schema("trace")["title"]
    'Game trace'
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Any

from revspy.core.exceptions import ParameterError


def schema_names() -> list[str]:
    """Names of the shipped schemas, e.g. ``trace`` or ``sweep-row``."""
    files = resources.files(__name__).iterdir()
    return sorted(f.name.removesuffix(".schema.json") for f in files if f.name.endswith(".schema.json"))


def schema_text(name: str) -> str:
    """Raw text of one schema file.

    Raises:
        ParameterError: If no schema has that name.
    """
    if name not in schema_names():
        raise ParameterError("name", name, f"known schemas: {', '.join(schema_names())}")
    return resources.files(__name__).joinpath(f"{name}.schema.json").read_text(encoding="utf-8")


def load_schema(name: str) -> dict[str, Any]:
    """Parsed schema."""
    schema: dict[str, Any] = json.loads(schema_text(name))
    return schema
