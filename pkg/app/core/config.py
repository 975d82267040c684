"""Experiment and scan configuration: loading and saving."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Literal

import numpy as np

from ..envs import EnvConfig
from ..goalspace import IDENTITY, PLANES, TransformSpec, describe
from ..hac import HacConfig
from ..her import DdpgHyper, HerStrategy
from .exceptions import ArtifactWriteError, ConfigurationError
from .registry import ALGORITHMS, POLICIES

logger = logging.getLogger(__name__)

ScanKind = Literal["rotation_angle", "noise_sigma", "noise_snr"]
SCAN_KINDS: tuple[str, ...] = ("rotation_angle", "noise_sigma", "noise_snr")


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one experiment needs; trial i runs with seed base_seed + i.

    The hierarchy depth follows the algorithm: her -> 1 level, hac -> 2 levels.
    """

    name: str = "experiment"
    algorithm: str = "her"
    policy: str = "learned"
    env: EnvConfig = field(default_factory=EnvConfig)
    hac: HacConfig = field(default_factory=HacConfig)
    trials: int = 10
    epochs: int = 60
    episodes_per_epoch: int = 50
    eval_episodes: int = 20
    base_seed: int = 0
    hyper: DdpgHyper = field(default_factory=DdpgHyper)
    her: HerStrategy = field(default_factory=HerStrategy)

    def __post_init__(self) -> None:
        spec = ALGORITHMS.get(self.algorithm)
        if spec is None:
            raise ConfigurationError(
                f"Unknown algorithm '{self.algorithm}' (expected one of {', '.join(ALGORITHMS)})"
            )
        if self.policy not in POLICIES:
            raise ConfigurationError(f"Unknown policy '{self.policy}' (expected one of {', '.join(POLICIES)})")
        for name in ("trials", "epochs", "episodes_per_epoch", "eval_episodes"):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be positive, got {getattr(self, name)}")
        if self.base_seed < 0:
            raise ConfigurationError(f"base_seed must be >= 0, got {self.base_seed}")
        if not POLICIES[self.policy].learns and (self.hac.f_m != IDENTITY or self.hac.f_s != IDENTITY):
            # scripted agents read goals as ground-truth coordinates
            raise ConfigurationError(
                f"policy '{self.policy}' needs identity goal transforms, "
                f"got f_m={describe(self.hac.f_m)}, f_s={describe(self.hac.f_s)}"
            )
        if self.hac.levels != spec.levels:
            object.__setattr__(self, "hac", replace(self.hac, levels=spec.levels))

    @property
    def f_m(self) -> TransformSpec:
        return self.hac.f_m

    @property
    def f_s(self) -> TransformSpec:
        return self.hac.f_s

    def with_transforms(self, f_m: TransformSpec, f_s: TransformSpec, name: str | None = None) -> ExperimentConfig:
        return replace(self, name=name or self.name, hac=replace(self.hac, f_m=f_m, f_s=f_s))

    def summary(self) -> str:
        return (
            f"{self.algorithm} on {self.env.task}, f_m={describe(self.f_m)}, f_s={describe(self.f_s)}, "
            f"{self.trials} trials x {self.epochs} epochs"
        )


@dataclass(frozen=True)
class ScanConfig:
    """One experiment per point of a parameter sweep, substituted into f_m and f_s."""

    kind: ScanKind
    n_points: int
    low: float
    high: float
    base: ExperimentConfig
    plane: str = "xy"

    def __post_init__(self) -> None:
        if self.kind not in SCAN_KINDS:
            raise ConfigurationError(f"Unknown scan kind '{self.kind}'")
        if self.n_points < 2:
            raise ConfigurationError(f"A scan needs at least 2 points, got {self.n_points}")
        if self.plane not in PLANES:
            raise ConfigurationError(f"Unknown rotation plane '{self.plane}'")

    def values(self) -> list[float]:
        return [float(v) for v in np.linspace(self.low, self.high, self.n_points)]


class ConfigManager:
    """Loads, validates and saves experiment files."""

    def __init__(self, path: Path) -> None:
        self._path = Path(path)
        self._experiment: ExperimentConfig | None = None
        self._scan: ScanConfig | None = None

    def load(self) -> ExperimentConfig:
        """Parse the JSON experiment file into domain configs."""
        from pydantic import ValidationError

        from ..schemas import ExperimentFile  # lazy: schemas imports this module

        if not self._path.exists():
            raise ConfigurationError(f"Experiment config not found: {self._path}")

        logger.debug(f"Loading experiment config from {self._path}")
        try:
            with open(self._path, encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"{self._path.name}: invalid JSON ({e})") from e

        if not isinstance(data, dict):
            raise ConfigurationError(
                f"{self._path.name}: expected a JSON object at the root, got {type(data).__name__}"
            )

        try:
            document = ExperimentFile.model_validate(data)
            self._experiment = document.to_config()
            self._scan = document.to_scan(self._experiment)
        except ValidationError as e:
            raise ConfigurationError(f"{self._path.name}: {e}") from e
        except ConfigurationError as e:
            raise ConfigurationError(f"{self._path.name}: {e}") from e

        suffix = f", scan {self._scan.kind} over {self._scan.n_points} points" if self._scan else ""
        logger.info(f"Loaded experiment '{self._experiment.name}' ({self._experiment.summary()}{suffix})")
        return self._experiment

    def save(self, config: ExperimentConfig, scan: ScanConfig | None = None) -> Path:
        from ..schemas import ExperimentFile

        document = ExperimentFile.from_config(config, scan)
        try:
            self._path.parent.mkdir(parents=True, exist_ok=True)
            self._path.write_text(document.model_dump_json(indent=2, exclude_none=True), encoding="utf-8")
        except OSError as e:
            raise ArtifactWriteError(f"Cannot write {self._path}: {e}") from e
        logger.info(f"Wrote experiment config {self._path}")
        return self._path

    @property
    def experiment(self) -> ExperimentConfig | None:
        return self._experiment

    @property
    def scan(self) -> ScanConfig | None:
        return self._scan
