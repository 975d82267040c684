"""Facade over trials: single experiments, parameter scans and the perturbation comparison."""

from __future__ import annotations

import logging
import math
from dataclasses import replace
from pathlib import Path

import numpy as np

from .core.config import ConfigManager, ExperimentConfig, ScanConfig
from .core.exceptions import ConfigurationError
from .core.models import CurveAggregate, ExperimentResult
from .core.registry import ALGORITHMS
from .core.utils import config_digest, slugify
from .envs import env_reset
from .goalspace import (
    IDENTITY,
    ExtraFactors,
    Noise,
    Rotation,
    TransformSpec,
    compose,
    sigma_for_snr,
    with_noise,
    with_rotation,
)
from .report import aggregate_curves, emit_csv, emit_plot
from .report.svg import XAxis
from .trial_pool import TrialPool

logger = logging.getLogger(__name__)

SNR_GOAL_SAMPLES = 1000

COMPARE_ROTATION = Rotation(plane="xy", angle=math.pi / 4)
COMPARE_NOISE = Noise(sigma=0.01)
COMPARE_EXTRA = ExtraFactors(count=1, value=0.0)

# Legend order of the comparison; combinations apply rotation, then extra factors, then noise.
CONDITIONS: list[tuple[str, TransformSpec]] = [
    ("baseline", IDENTITY),
    ("rotation", COMPARE_ROTATION),
    ("noise", COMPARE_NOISE),
    ("extra_factor", COMPARE_EXTRA),
    ("rotation+extra_factor", compose(COMPARE_ROTATION, COMPARE_EXTRA)),
    ("rotation+noise", compose(COMPARE_ROTATION, COMPARE_NOISE)),
    ("extra_factor+noise", compose(COMPARE_EXTRA, COMPARE_NOISE)),
    ("rotation+extra_factor+noise", compose(COMPARE_ROTATION, COMPARE_EXTRA, COMPARE_NOISE)),
]


def run_experiment(config: ExperimentConfig, jobs: int = 1) -> ExperimentResult:
    """All trials of one config, aggregated over the ones that completed."""
    logger.info(f"Experiment '{config.name}': {config.summary()}")
    trials = TrialPool(jobs).run_sync(config)
    result = ExperimentResult(name=config.name, trials=trials, aggregate=aggregate_curves(trials))
    for t in result.aborted:
        logger.warning(f"Trial {t.trial_index} (seed {t.seed}) excluded from aggregate: {t.error}")
    logger.info(f"Experiment '{config.name}' finished: {len(result.completed)}/{len(trials)} trials completed")
    return result


def reset_goal_samples(config: ExperimentConfig, n: int = SNR_GOAL_SAMPLES) -> np.ndarray:
    """Ground-truth desired goals of n environment resets, seeded by base_seed."""
    rng = np.random.default_rng(config.base_seed)
    return np.stack([env_reset(config.env, rng)[1] for _ in range(n)])


def scan_points(scan: ScanConfig) -> list[tuple[float, ExperimentConfig]]:
    """(parameter value, config) per scan point with the parameter put into f_m and f_s."""
    base = scan.base
    points = []
    samples = reset_goal_samples(base) if scan.kind == "noise_snr" else None
    for value in scan.values():
        match scan.kind:
            case "rotation_angle":
                f_m = with_rotation(base.f_m, scan.plane, value)
                f_s = with_rotation(base.f_s, scan.plane, value)
                label = f"{base.name}-rotation-{scan.plane}-{value:.4f}"
            case "noise_sigma":
                f_m, f_s = with_noise(base.f_m, value), with_noise(base.f_s, value)
                label = f"{base.name}-noise-{value:.4g}"
            case "noise_snr":
                sigma = sigma_for_snr(value, samples)
                f_m, f_s = with_noise(base.f_m, sigma), with_noise(base.f_s, sigma)
                label = f"{base.name}-snr-{value:.2f}db"
                logger.debug(f"SNR {value:.2f} dB -> sigma {sigma:.5f}")
            case _:
                raise ConfigurationError(f"Unknown scan kind '{scan.kind}'")
        points.append((value, base.with_transforms(f_m, f_s, name=label)))
    return points


def run_scan(scan: ScanConfig, jobs: int = 1) -> list[tuple[float, ExperimentResult]]:
    """One full experiment per scan point, in scan order."""
    points = scan_points(scan)
    logger.info(f"Scan {scan.kind} over {len(points)} points of '{scan.base.name}'")
    return [(value, run_experiment(config, jobs)) for value, config in points]


def compare_conditions(base: ExperimentConfig) -> dict[str, list[tuple[str, ExperimentConfig]]]:
    """The eight transform conditions per algorithm, each applied to both f_m and f_s."""
    grid = {}
    for algorithm in ALGORITHMS:
        rows = []
        for condition, spec in CONDITIONS:
            config = replace(base, algorithm=algorithm).with_transforms(
                spec, spec, name=f"{algorithm}-{slugify(condition)}"
            )
            rows.append((condition, config))
        grid[algorithm] = rows
    return grid


class ExperimentManager:
    """Runs experiments and writes their CSV and SVG artifacts under one output directory."""

    def __init__(self, out_dir: Path, jobs: int = 1, x_axis: XAxis = "epoch") -> None:
        self.out_dir = Path(out_dir)
        self.jobs = jobs
        self.x_axis = x_axis

    def _record_config(self, config: ExperimentConfig, scan: ScanConfig | None = None) -> None:
        from .schemas import ExperimentFile

        digest = config_digest(ExperimentFile.from_config(config, scan).model_dump(mode="json"))
        ConfigManager(self.out_dir / f"{slugify(config.name)}.config.json").save(config, scan)
        logger.info(f"Config '{config.name}' digest {digest}")

    def run(self, config: ExperimentConfig) -> ExperimentResult:
        self._record_config(config)
        result = run_experiment(config, self.jobs)
        stem = slugify(config.name)
        emit_csv(result, self.out_dir, stem)
        emit_plot([(config.name, result.aggregate)], self.out_dir / f"{stem}.svg", x_axis=self.x_axis)
        return result

    def scan(self, scan: ScanConfig) -> list[tuple[float, ExperimentResult]]:
        self._record_config(scan.base, scan)
        results = run_scan(scan, self.jobs)
        for _, result in results:
            emit_csv(result, self.out_dir, slugify(result.name))
        stem = slugify(f"{scan.base.name}-scan-{scan.kind}")
        curves = [(f"{scan.kind}={value:.4g}", r.aggregate) for value, r in results]
        emit_plot(curves, self.out_dir / f"{stem}.svg", x_axis=self.x_axis, title=f"{scan.base.name}: {scan.kind}")
        return results

    def compare(self, base: ExperimentConfig) -> dict[str, dict[str, ExperimentResult]]:
        self._record_config(base)
        results: dict[str, dict[str, ExperimentResult]] = {}
        for algorithm, rows in compare_conditions(base).items():
            results[algorithm] = {}
            for condition, config in rows:
                result = run_experiment(config, self.jobs)
                emit_csv(result, self.out_dir, slugify(config.name))
                results[algorithm][condition] = result
            curves = [(condition, r.aggregate) for condition, r in results[algorithm].items()]
            emit_plot(
                curves,
                self.out_dir / f"{slugify(base.name)}-{algorithm}.svg",
                x_axis=self.x_axis,
                title=f"{ALGORITHMS[algorithm].label} on {base.env.task}",
            )

        # HER vs HAC sample efficiency per condition.
        for condition, _ in CONDITIONS:
            pair: list[tuple[str, CurveAggregate]] = [
                (ALGORITHMS[a].label, results[a][condition].aggregate) for a in results
            ]
            emit_plot(
                pair,
                self.out_dir / f"{slugify(base.name)}-{slugify(condition)}-samples.svg",
                x_axis="samples",
                title=f"{condition}: HER vs HAC",
            )
        return results
