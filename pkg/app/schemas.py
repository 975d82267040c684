"""Pydantic models for the experiment file contract (parse, validate, serialize)."""

from __future__ import annotations

import math
from dataclasses import asdict
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field

from .core.config import ExperimentConfig, ScanConfig
from .envs import EnvConfig
from .goalspace import ExtraFactors, Identity, Noise, Rotation, TransformSpec, compose, primitives
from .hac import HacConfig
from .her import DdpgHyper, HerStrategy


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


# === Transform records ===
class IdentityRecord(_Section):
    kind: Literal["identity"] = "identity"


class RotationRecord(_Section):
    kind: Literal["rotation"] = "rotation"
    plane: Literal["xy", "yz", "xz"]
    angle: float = Field(ge=0.0, lt=2.0 * math.pi)
    center: float = 0.5


class NoiseRecord(_Section):
    kind: Literal["noise"] = "noise"
    sigma: float = Field(ge=0.0, allow_inf_nan=False)


class ExtraFactorsRecord(_Section):
    kind: Literal["extra_factors"] = "extra_factors"
    count: int = Field(default=1, ge=1)
    value: float = 0.0


TransformRecord = Annotated[
    IdentityRecord | RotationRecord | NoiseRecord | ExtraFactorsRecord,
    Field(discriminator="kind"),
]


def transform_from_records(records: list[TransformRecord]) -> TransformSpec:
    """A list of primitives is their left-to-right composition; [] is identity."""
    parts: list[TransformSpec] = []
    for r in records:
        match r:
            case RotationRecord():
                parts.append(Rotation(plane=r.plane, angle=r.angle, center=r.center))
            case NoiseRecord():
                parts.append(Noise(sigma=r.sigma))
            case ExtraFactorsRecord():
                parts.append(ExtraFactors(count=r.count, value=r.value))
            case IdentityRecord():
                parts.append(Identity())
    return compose(*parts)


def records_from_transform(spec: TransformSpec) -> list[TransformRecord]:
    records: list[TransformRecord] = []
    for p in primitives(spec):
        match p:
            case Rotation():
                records.append(RotationRecord(plane=p.plane, angle=p.angle, center=p.center))
            case Noise():
                records.append(NoiseRecord(sigma=p.sigma))
            case ExtraFactors():
                records.append(ExtraFactorsRecord(count=p.count, value=p.value))
    return records


# === Sections ===
class EnvSection(_Section):
    task: Literal["reach", "pick_place"] = "reach"
    episode_length: int = Field(default=50, ge=1)
    success_threshold: float = Field(default=0.1, gt=0.0)
    a_max: float = Field(default=0.05, gt=0.0)
    grasp_radius: float = Field(default=0.05, gt=0.0)


class HyperSection(_Section):
    gamma: float = Field(default=0.98, ge=0.0, lt=1.0)
    actor_lr: float = Field(default=1e-3, gt=0.0)
    critic_lr: float = Field(default=1e-3, gt=0.0)
    tau: float = Field(default=0.05, gt=0.0, le=1.0)
    batch_size: int = Field(default=128, ge=1)
    buffer_capacity: int = Field(default=100_000, ge=1)
    updates_per_cycle: int = Field(default=40, ge=0)
    exploration_sigma: float = Field(default=0.1, ge=0.0)
    epsilon_random: float = Field(default=0.2, ge=0.0, le=1.0)
    action_l2: float = Field(default=1.0, ge=0.0)
    hidden_sizes: tuple[int, ...] = (64, 64)
    hidden_activation: Literal["relu", "tanh"] = "relu"


class HerSection(_Section):
    mode: Literal["future"] = "future"
    k: int = Field(default=4, ge=1)


class HacSection(_Section):
    horizon_H: int = Field(default=10, ge=1)
    subgoal_test_rate: float = Field(default=0.3, ge=0.0, le=1.0)
    subgoal_penalty: float | None = Field(default=None, lt=0.0)
    master_offset_bound: float = Field(default=0.1, gt=0.0)
    master_action_l2: float = Field(default=0.0, ge=0.0)


class ScanSection(_Section):
    kind: Literal["rotation_angle", "noise_sigma", "noise_snr"]
    n_points: int = Field(ge=2)
    range: tuple[float, float]
    plane: Literal["xy", "yz", "xz"] = "xy"


class ExperimentFile(_Section):
    """Root of an experiment JSON file."""

    name: str = "experiment"
    algorithm: Literal["her", "hac"] = "her"
    policy: Literal["learned", "scripted"] = "learned"
    env: EnvSection = Field(default_factory=EnvSection)
    f_m: list[TransformRecord] = Field(default_factory=list)
    f_s: list[TransformRecord] = Field(default_factory=list)
    trials: int = Field(default=10, ge=1)
    epochs: int = Field(default=60, ge=1)
    episodes_per_epoch: int = Field(default=50, ge=1)
    eval_episodes: int = Field(default=20, ge=1)
    base_seed: int = Field(default=0, ge=0)
    hyper: HyperSection = Field(default_factory=HyperSection)
    her: HerSection = Field(default_factory=HerSection)
    hac: HacSection = Field(default_factory=HacSection)
    scan: ScanSection | None = None

    def to_config(self) -> ExperimentConfig:
        return ExperimentConfig(
            name=self.name,
            algorithm=self.algorithm,
            policy=self.policy,
            env=EnvConfig(**self.env.model_dump()),
            hac=HacConfig(
                **self.hac.model_dump(),
                f_m=transform_from_records(self.f_m),
                f_s=transform_from_records(self.f_s),
            ),
            trials=self.trials,
            epochs=self.epochs,
            episodes_per_epoch=self.episodes_per_epoch,
            eval_episodes=self.eval_episodes,
            base_seed=self.base_seed,
            hyper=DdpgHyper(**self.hyper.model_dump()),
            her=HerStrategy(**self.her.model_dump()),
        )

    def to_scan(self, base: ExperimentConfig) -> ScanConfig | None:
        if self.scan is None:
            return None
        low, high = self.scan.range
        return ScanConfig(
            kind=self.scan.kind, n_points=self.scan.n_points, low=low, high=high, base=base, plane=self.scan.plane
        )

    @classmethod
    def from_config(cls, config: ExperimentConfig, scan: ScanConfig | None = None) -> ExperimentFile:
        hac = config.hac
        return cls(
            name=config.name,
            algorithm=config.algorithm,
            policy=config.policy,
            env=EnvSection(**asdict(config.env)),
            f_m=records_from_transform(hac.f_m),
            f_s=records_from_transform(hac.f_s),
            trials=config.trials,
            epochs=config.epochs,
            episodes_per_epoch=config.episodes_per_epoch,
            eval_episodes=config.eval_episodes,
            base_seed=config.base_seed,
            hyper=HyperSection(**asdict(config.hyper)),
            her=HerSection(**asdict(config.her)),
            hac=HacSection(
                horizon_H=hac.horizon_H,
                subgoal_test_rate=hac.subgoal_test_rate,
                subgoal_penalty=hac.subgoal_penalty,
                master_offset_bound=hac.master_offset_bound,
                master_action_l2=hac.master_action_l2,
            ),
            scan=ScanSection(kind=scan.kind, n_points=scan.n_points, range=(scan.low, scan.high), plane=scan.plane)
            if scan
            else None,
        )
