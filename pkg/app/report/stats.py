"""Trial aggregation and curve analysis."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np
from scipy import stats

from ..core.models import CurveAggregate, TrialResult

logger = logging.getLogger(__name__)


def quantile(values: Sequence[float], q: float) -> float:
    """Linear-interpolation quantile on the sorted values, index h = q*(n-1)."""
    if len(values) == 0:
        raise ValueError("quantile of an empty list")
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must be in [0, 1], got {q}")
    ordered = sorted(float(v) for v in values)
    h = q * (len(ordered) - 1)
    lo = math.floor(h)
    hi = min(lo + 1, len(ordered) - 1)
    return ordered[lo] + (h - lo) * (ordered[hi] - ordered[lo])


def aggregate_curves(trials: Sequence[TrialResult]) -> CurveAggregate:
    """Per-epoch median and quartiles over completed trials, independent of their order."""
    completed = sorted((t for t in trials if not t.aborted), key=lambda t: t.trial_index)
    if not completed:
        logger.warning("No completed trials to aggregate")
        return CurveAggregate(median=(), q25=(), q75=())

    epochs = len(completed[0].success_rates)
    for t in completed:
        if len(t.success_rates) != epochs:
            raise ValueError(f"Trial {t.trial_index} has {len(t.success_rates)} epochs, expected {epochs}")

    columns = [[t.success_rates[e] for t in completed] for e in range(epochs)]
    steps = [[float(t.env_steps[e]) for t in completed] for e in range(epochs)] if completed[0].env_steps else []
    return CurveAggregate(
        median=tuple(quantile(c, 0.5) for c in columns),
        q25=tuple(quantile(c, 0.25) for c in columns),
        q75=tuple(quantile(c, 0.75) for c in columns),
        env_steps=tuple(quantile(s, 0.5) for s in steps),
    )


def epochs_to_threshold(aggregate: CurveAggregate, threshold: float) -> int | None:
    """1-based epoch at which the median first reaches `threshold`, None if never."""
    for i, m in enumerate(aggregate.median):
        if m >= threshold:
            return i + 1
    return None


def band_overlap_fraction(a: CurveAggregate, b: CurveAggregate) -> float:
    """Fraction of shared epochs where the [q25, q75] bands intersect."""
    n = min(a.epochs, b.epochs)
    if n == 0:
        return 0.0
    overlaps = sum(max(a.q25[e], b.q25[e]) <= min(a.q75[e], b.q75[e]) for e in range(n))
    return overlaps / n


def final_median(aggregate: CurveAggregate) -> float:
    if aggregate.epochs == 0:
        return float("nan")
    return aggregate.median[-1]


def rank_trend(parameters: Sequence[float], outcomes: Sequence[float]) -> float:
    """Spearman rank correlation; 0.0 when either side is constant."""
    x, y = np.asarray(parameters, dtype=np.float64), np.asarray(outcomes, dtype=np.float64)
    if len(x) != len(y):
        raise ValueError(f"{len(x)} parameters vs {len(y)} outcomes")
    if np.ptp(x) == 0.0 or np.ptp(y) == 0.0:
        return 0.0
    return float(stats.spearmanr(x, y).statistic)
