"""Result artifacts: aggregation statistics, CSV files and SVG plots."""

from .csv_io import emit_csv, read_aggregate_csv, read_raw_csv
from .stats import (
    aggregate_curves,
    band_overlap_fraction,
    epochs_to_threshold,
    final_median,
    quantile,
    rank_trend,
)
from .svg import emit_plot, render_plot

__all__ = [
    "aggregate_curves",
    "band_overlap_fraction",
    "emit_csv",
    "emit_plot",
    "epochs_to_threshold",
    "final_median",
    "quantile",
    "rank_trend",
    "read_aggregate_csv",
    "read_raw_csv",
    "render_plot",
]
