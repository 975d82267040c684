"""Standalone SVG learning-curve plots: median line plus quartile band per condition."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from pathlib import Path
from typing import Literal

from ..core.exceptions import ArtifactWriteError
from ..core.models import CurveAggregate

logger = logging.getLogger(__name__)

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"]
AXIS = "#444444"
GRID = "#dddddd"

WIDTH, HEIGHT = 720, 420
MARGIN = {"top": 30, "right": 190, "bottom": 50, "left": 60}

XAxis = Literal["epoch", "samples"]


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def _x_values(aggregate: CurveAggregate, x_axis: XAxis) -> list[float]:
    if x_axis == "samples":
        if len(aggregate.env_steps) != aggregate.epochs:
            raise ValueError("Sample axis requested but the aggregate has no env step counts")
        return list(aggregate.env_steps)
    return [float(e + 1) for e in range(aggregate.epochs)]


def render_plot(curves: Sequence[tuple[str, CurveAggregate]], x_axis: XAxis = "epoch", title: str = "") -> str:
    """SVG document with x = epoch (or env steps), y = success rate in [0, 1]."""
    if not curves:
        raise ValueError("Nothing to plot")

    chart_w = WIDTH - MARGIN["left"] - MARGIN["right"]
    chart_h = HEIGHT - MARGIN["top"] - MARGIN["bottom"]
    xs_all = [x for _, agg in curves for x in _x_values(agg, x_axis)]
    x_lo, x_hi = (min(xs_all), max(xs_all)) if xs_all else (0.0, 1.0)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5

    def sx(x: float) -> float:
        return MARGIN["left"] + (x - x_lo) / (x_hi - x_lo) * chart_w

    def sy(y: float) -> float:
        return MARGIN["top"] + (1.0 - y) * chart_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="{MARGIN["left"]}" y="20" font-size="14" fill="{AXIS}">{_escape(title)}</text>')

    # Grid and y ticks.
    for i in range(6):
        v = i / 5
        y = sy(v)
        parts.append(
            f'<line x1="{MARGIN["left"]}" y1="{y:.2f}" x2="{MARGIN["left"] + chart_w}" y2="{y:.2f}" '
            f'stroke="{GRID}" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{MARGIN["left"] - 8}" y="{y + 4:.2f}" text-anchor="end" font-size="10" fill="{AXIS}">{v:.1f}</text>'
        )
    for i in range(6):
        x = x_lo + i / 5 * (x_hi - x_lo)
        label = f"{x:.0f}" if x_axis == "samples" or x == int(x) else f"{x:.1f}"
        parts.append(
            f'<text x="{sx(x):.2f}" y="{MARGIN["top"] + chart_h + 16}" text-anchor="middle" font-size="10" '
            f'fill="{AXIS}">{label}</text>'
        )

    parts.append(
        f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{chart_w}" height="{chart_h}" '
        f'fill="none" stroke="{AXIS}" stroke-width="1"/>'
    )
    x_label = "environment steps" if x_axis == "samples" else "epoch"
    parts.append(
        f'<text x="{MARGIN["left"] + chart_w / 2}" y="{HEIGHT - 12}" text-anchor="middle" font-size="12" '
        f'fill="{AXIS}">{x_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{MARGIN["top"] + chart_h / 2}" text-anchor="middle" font-size="12" fill="{AXIS}" '
        f'transform="rotate(-90 16 {MARGIN["top"] + chart_h / 2})">success rate</text>'
    )

    for i, (name, agg) in enumerate(curves):
        color = PALETTE[i % len(PALETTE)]
        xs = _x_values(agg, x_axis)
        upper = " ".join(f"{sx(x):.2f},{sy(v):.2f}" for x, v in zip(xs, agg.q75))
        lower = " ".join(f"{sx(x):.2f},{sy(v):.2f}" for x, v in reversed(list(zip(xs, agg.q25))))
        parts.append(f'<polygon class="band" points="{upper} {lower}" fill="{color}" fill-opacity="0.2" stroke="none"/>')
        line = " ".join(f"{sx(x):.2f},{sy(v):.2f}" for x, v in zip(xs, agg.median))
        parts.append(f'<polyline class="median" points="{line}" fill="none" stroke="{color}" stroke-width="2"/>')

    # Legend
    lx = MARGIN["left"] + chart_w + 16
    for i, (name, _) in enumerate(curves):
        color = PALETTE[i % len(PALETTE)]
        ly = MARGIN["top"] + 10 + i * 20
        parts.append(
            f'<g class="legend-entry"><rect x="{lx}" y="{ly - 8}" width="12" height="12" fill="{color}"/>'
            f'<text x="{lx + 18}" y="{ly + 2}" font-size="11" fill="{AXIS}">{_escape(name)}</text></g>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_plot(
    curves: Sequence[tuple[str, CurveAggregate]], path: Path, x_axis: XAxis = "epoch", title: str = ""
) -> Path:
    document = render_plot(curves, x_axis=x_axis, title=title)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(document, encoding="utf-8")
    except OSError as e:
        raise ArtifactWriteError(f"Cannot write {path}: {e}") from e
    logger.info(f"Wrote plot {path} ({len(curves)} curve(s))")
    return path
