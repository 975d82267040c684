"""Raw and aggregate CSV files of an experiment, plus their readers."""

from __future__ import annotations

import csv
import logging
from pathlib import Path

from ..core.exceptions import ArtifactWriteError
from ..core.models import CurveAggregate, ExperimentResult, TrialResult

logger = logging.getLogger(__name__)

RAW_FIELDS = ["trial", "seed", "epoch", "success_rate", "env_steps"]
AGGREGATE_FIELDS = ["epoch", "median", "q25", "q75", "env_steps"]


def _write_rows(path: Path, fieldnames: list[str], rows: list[dict]) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=fieldnames, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
    except OSError as e:
        raise ArtifactWriteError(f"Cannot write {path}: {e}") from e


def raw_rows(trials: list[TrialResult]) -> list[dict]:
    rows = []
    for t in sorted(trials, key=lambda t: t.trial_index):
        if t.aborted:
            continue
        for epoch, rate in enumerate(t.success_rates):
            steps = t.env_steps[epoch] if epoch < len(t.env_steps) else ""
            rows.append(
                {"trial": t.trial_index, "seed": t.seed, "epoch": epoch, "success_rate": repr(rate), "env_steps": steps}
            )
    return rows


def aggregate_rows(aggregate: CurveAggregate) -> list[dict]:
    return [
        {
            "epoch": e,
            "median": repr(aggregate.median[e]),
            "q25": repr(aggregate.q25[e]),
            "q75": repr(aggregate.q75[e]),
            "env_steps": repr(aggregate.env_steps[e]) if e < len(aggregate.env_steps) else "",
        }
        for e in range(aggregate.epochs)
    ]


def emit_csv(result: ExperimentResult, out_dir: Path, stem: str | None = None) -> tuple[Path, Path]:
    """Write <stem>_raw.csv and <stem>_aggregate.csv; aborted trials are left out of both."""
    stem = stem or result.name
    raw_path = Path(out_dir) / f"{stem}_raw.csv"
    aggregate_path = Path(out_dir) / f"{stem}_aggregate.csv"
    _write_rows(raw_path, RAW_FIELDS, raw_rows(result.trials))
    _write_rows(aggregate_path, AGGREGATE_FIELDS, aggregate_rows(result.aggregate))
    logger.info(f"Wrote {raw_path} and {aggregate_path}")
    return raw_path, aggregate_path


def read_raw_csv(path: Path) -> list[TrialResult]:
    """Rebuild per-trial curves from a raw CSV (wall time is not stored)."""
    trials: dict[int, TrialResult] = {}
    with open(path, encoding="utf-8", newline="") as f:
        for row in csv.DictReader(f):
            index = int(row["trial"])
            trial = trials.setdefault(index, TrialResult(trial_index=index, seed=int(row["seed"])))
            trial.success_rates.append(float(row["success_rate"]))
            if row.get("env_steps"):
                trial.env_steps.append(int(row["env_steps"]))
    return [trials[i] for i in sorted(trials)]


def read_aggregate_csv(path: Path) -> CurveAggregate:
    median, q25, q75, steps = [], [], [], []
    with open(path, encoding="utf-8", newline="") as f:
        for row in csv.DictReader(f):
            median.append(float(row["median"]))
            q25.append(float(row["q25"]))
            q75.append(float(row["q75"]))
            if row.get("env_steps"):
                steps.append(float(row["env_steps"]))
    return CurveAggregate(median=tuple(median), q25=tuple(q25), q75=tuple(q75), env_steps=tuple(steps))
