"""Domain entities shared across levels: experience tuples, random streams, results."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Transition:
    """Goal-conditioned experience tuple of one level.

    action_origin is the point master actions are offsets from (the achieved
    sub-goal at proposal time); None for environment-level actions.
    """

    obs: np.ndarray
    action: np.ndarray
    next_obs: np.ndarray
    achieved_goal: np.ndarray
    next_achieved_goal: np.ndarray
    desired_goal: np.ndarray
    reward: float
    done: bool
    action_origin: np.ndarray | None = None


@dataclass(frozen=True)
class MasterTransition(Transition):
    """Master-level transition; action is a subgoal in the sub-goal space."""

    is_subgoal_test: bool = False
    is_hindsight_action: bool = False


@dataclass(frozen=True)
class TrialStreams:
    """Independent random streams of one trial, all derived from its seed."""

    env: np.random.Generator
    init: np.random.Generator
    explore: np.random.Generator
    goal_noise: np.random.Generator
    relabel: np.random.Generator
    subgoal_test: np.random.Generator
    replay: np.random.Generator

    @classmethod
    def from_seed(cls, seed: int) -> TrialStreams:
        children = np.random.SeedSequence(seed).spawn(7)
        return cls(*(np.random.default_rng(c) for c in children))


@dataclass
class TrialResult:
    """Per-epoch evaluation curve of one seeded trial."""

    trial_index: int
    seed: int
    success_rates: list[float] = field(default_factory=list)
    env_steps: list[int] = field(default_factory=list)  # cumulative training steps per epoch
    wall_time: float = 0.0
    aborted: bool = False
    error: str | None = None


@dataclass(frozen=True)
class CurveAggregate:
    """Median and quartiles of success rate across trials, one entry per epoch."""

    median: tuple[float, ...]
    q25: tuple[float, ...]
    q75: tuple[float, ...]
    env_steps: tuple[float, ...] = ()  # median cumulative env steps per epoch

    @property
    def epochs(self) -> int:
        return len(self.median)


@dataclass
class ExperimentResult:
    """All trials of one experiment plus their aggregate."""

    name: str
    trials: list[TrialResult]
    aggregate: CurveAggregate

    @property
    def completed(self) -> list[TrialResult]:
        return [t for t in self.trials if not t.aborted]

    @property
    def aborted(self) -> list[TrialResult]:
        return [t for t in self.trials if t.aborted]
