"""Sweep tables backed by polars DataFrames.

Rows become a DataFrame with a fixed column order and dtypes; CSV output
uses a fixed float precision so identical sweeps give identical bytes.
"""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

import polars as pl

from revspy.core.experiments import SWEEP_COLUMNS


if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from revspy.core.experiments import SweepRow


SWEEP_SCHEMA: dict[str, pl.DataType] = {
    "n": pl.Int64(),
    "p": pl.Float64(),
    "r": pl.Int64(),
    "m": pl.Int64(),
    "regime": pl.String(),
    "prediction": pl.Float64(),
    "cert_lb": pl.Int64(),
    "evidence_lb": pl.Int64(),
    "exact_sigma": pl.Int64(),
    "spy_survival": pl.Float64(),
    "rev_win": pl.Float64(),
    "seed": pl.UInt64(),
    "error": pl.String(),
}

FLOAT_PRECISION = 6


def rows_to_frame(rows: Sequence[SweepRow]) -> pl.DataFrame:
    """DataFrame of sweep rows in the fixed column order."""
    records = [row.to_dict() for row in rows]
    columns = {name: [rec[name] for rec in records] for name in SWEEP_COLUMNS}
    return pl.DataFrame(columns, schema=SWEEP_SCHEMA)


def frame_to_csv(frame: pl.DataFrame, path: Path | None = None) -> str:
    """CSV text of a sweep frame; also written to ``path`` when given."""
    text = frame.write_csv(float_precision=FLOAT_PRECISION, null_value="")
    if path is not None:
        path.write_text(text, encoding="utf-8")
    return text


def rows_to_json(rows: Sequence[SweepRow]) -> str:
    """JSON array mirroring the CSV rows."""
    return json.dumps([row.to_dict() for row in rows], indent=2)


def read_sweep_csv(path: Path) -> pl.DataFrame:
    """Load a sweep CSV written by :func:`frame_to_csv`."""
    return pl.read_csv(path, schema=SWEEP_SCHEMA, null_values=[""])


def summarize_sweep(frame: pl.DataFrame) -> pl.DataFrame:
    """Per-cell rates: one row per (n, p, r, m) in first-seen order."""
    return frame.group_by(["n", "p", "r", "m"], maintain_order=True).agg(
        pl.len().alias("trials"),
        pl.col("regime").first(),
        pl.col("prediction").first(),
        pl.col("cert_lb").min().alias("cert_lb_min"),
        pl.col("evidence_lb").min().alias("evidence_lb_min"),
        pl.col("exact_sigma").min().alias("exact_sigma_min"),
        pl.col("exact_sigma").max().alias("exact_sigma_max"),
        pl.col("spy_survival").mean(),
        pl.col("rev_win").mean(),
        pl.col("error").is_not_null().sum().alias("errors"),
    )
