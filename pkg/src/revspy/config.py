"""Configuration: runtime settings and sweep spec files.

Settings come from the environment (REVSPY_THREADS, REVSPY_EC_BUDGET,
REVSPY_SOLVER_BUDGET). Sweep specs are plain ``key = value`` files:

    # dense cells
    n = 32, 64
    p = 0.5
    r = 6
    m = 4
    trials = 5
    method = certified, simulate
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Any

from revspy.core.exceptions import ParameterError, SweepSpecError
from revspy.core.models import CellMethod, SweepSpec
from revspy.core.properties import DEFAULT_EC_BUDGET
from revspy.core.solver import DEFAULT_SOLVER_BUDGET


if TYPE_CHECKING:
    from collections.abc import Callable, Mapping


@dataclass(frozen=True, slots=True)
class Settings:
    """Runtime settings.

    Attributes:
        ec_budget: Largest exact e.c. enumeration accepted.
        solver_budget: Largest solver state count accepted.
        matching_retries: Random restarts when building a matching set.
        matching_repairs: Swap-repair steps per restart.
        threads: Worker threads (0 = one per CPU).
    """

    ec_budget: int = DEFAULT_EC_BUDGET
    solver_budget: int = DEFAULT_SOLVER_BUDGET
    matching_retries: int = 10
    matching_repairs: int = 200
    threads: int = 0

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None) -> Settings:
        """Read REVSPY_* variables; unset ones keep their defaults.

        Raises:
            ParameterError: If a variable is not a non-negative integer.
        """
        env = os.environ if environ is None else environ
        values: dict[str, Any] = {}
        for var, field_name in (
            ("REVSPY_THREADS", "threads"),
            ("REVSPY_EC_BUDGET", "ec_budget"),
            ("REVSPY_SOLVER_BUDGET", "solver_budget"),
        ):
            raw = env.get(var)
            if raw is None or not raw.strip():
                continue
            try:
                value = int(raw)
            except ValueError:
                raise ParameterError(var, raw, "must be an integer") from None
            if value < 0:
                raise ParameterError(var, raw, "must be >= 0")
            values[field_name] = value
        return cls(**values)


def _ints(raw: str) -> tuple[int, ...]:
    return tuple(int(item) for item in _items(raw))


def _floats(raw: str) -> tuple[float, ...]:
    return tuple(float(item) for item in _items(raw))


def _methods(raw: str) -> tuple[CellMethod, ...]:
    return tuple(CellMethod(item) for item in _items(raw))


def _items(raw: str) -> list[str]:
    return [item.strip() for item in raw.split(",") if item.strip()]


_SWEEP_KEYS: dict[str, tuple[str, Callable[[str], Any]]] = {
    "n": ("n", _ints),
    "p": ("p", _floats),
    "r": ("r", _ints),
    "m": ("m", _ints),
    "trials": ("trials", int),
    "seed": ("seed", int),
    "method": ("methods", _methods),
    "omega": ("omega", float),
    "horizon": ("horizon", int),
    "s_max": ("s_max", int),
    "games": ("games", int),
    "spy": ("spy", str.strip),
    "rev": ("rev", str.strip),
    "eps": ("eps", float),
    "j_max": ("j_max", int),
    "l_max": ("l_max", int),
}


def parse_sweep_spec(text: str, path: Path | None = None) -> SweepSpec:
    """Parse sweep spec text.

    Raises:
        SweepSpecError: Unknown key, repeated key, bad value or missing grid.

    Example:
        >>> spec = parse_sweep_spec("n = 8, 10\\np = 0.5\\nr = 3\\nm = 2")
        >>> spec.cells()
        [(8, 0.5, 3, 2), (10, 0.5, 3, 2)]
    """
    values: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, raw = body.partition("=")
        key = key.strip()
        if not sep:
            raise SweepSpecError(f"expected 'key = value', got '{body}'", path, lineno)
        if key not in _SWEEP_KEYS:
            known = ", ".join(_SWEEP_KEYS)
            raise SweepSpecError(f"unknown key '{key}' (known: {known})", path, lineno)
        field_name, convert = _SWEEP_KEYS[key]
        if field_name in values:
            raise SweepSpecError(f"key '{key}' given twice", path, lineno)
        try:
            values[field_name] = convert(raw.strip())
        except ValueError:
            raise SweepSpecError(f"bad value for '{key}': '{raw.strip()}'", path, lineno) from None
    missing = [k for k in ("n", "p", "r", "m") if k not in values]
    if missing:
        raise SweepSpecError(f"missing grid key(s): {', '.join(missing)}", path)
    try:
        return SweepSpec(**values)
    except ParameterError as e:
        raise SweepSpecError(str(e), path) from e


def load_sweep_spec(path: Path | str) -> SweepSpec:
    """Read and parse a sweep spec file."""
    spec_path = Path(path)
    try:
        text = spec_path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise SweepSpecError(f"sweep spec is not UTF-8 text (byte {e.start})", spec_path) from None
    except OSError as e:
        raise SweepSpecError(f"cannot read sweep spec: {e}", spec_path) from e
    return parse_sweep_spec(text, spec_path)
