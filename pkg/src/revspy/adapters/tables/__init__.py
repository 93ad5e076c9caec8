"""Sweep table adapters."""

from revspy.adapters.tables.polars import (
    SWEEP_SCHEMA,
    frame_to_csv,
    read_sweep_csv,
    rows_to_frame,
    rows_to_json,
    summarize_sweep,
)


__all__ = [
    "SWEEP_SCHEMA",
    "frame_to_csv",
    "read_sweep_csv",
    "rows_to_frame",
    "rows_to_json",
    "summarize_sweep",
]
