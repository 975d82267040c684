"""Kinematic reach and pick-and-place tasks in the unit cube.

There is no physics: the gripper moves by the clipped commanded displacement,
and a grasped object moves rigidly with it. Released objects stay in place.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core.exceptions import DimensionMismatchError
from ..core.utils import as_vector
from .config import EnvConfig

WORKSPACE_LOW = 0.0
WORKSPACE_HIGH = 1.0


@dataclass(frozen=True)
class EnvObservation:
    gripper_position: np.ndarray
    grip_closed: float = 0.0
    object_position: np.ndarray | None = None  # pick_place only

    def as_vector(self) -> np.ndarray:
        """Flat observation fed to policies: gripper (+ grip, object for pick_place)."""
        if self.object_position is None:
            return self.gripper_position.copy()
        return np.concatenate([self.gripper_position, [self.grip_closed], self.object_position])

    @classmethod
    def from_vector(cls, config: EnvConfig, vec: np.ndarray) -> EnvObservation:
        vec = as_vector(vec, config.obs_dim, "observation")
        if config.task == "reach":
            return cls(gripper_position=vec.copy())
        return cls(gripper_position=vec[:3].copy(), grip_closed=float(vec[3]), object_position=vec[4:7].copy())


@dataclass(frozen=True)
class EnvAction:
    delta: np.ndarray
    grip_command: float = 0.0  # pick_place only

    @classmethod
    def from_vector(cls, config: EnvConfig, vec: np.ndarray) -> EnvAction:
        vec = as_vector(vec, config.action_dim, "action")
        if config.task == "reach":
            return cls(delta=vec.copy())
        return cls(delta=vec[:3].copy(), grip_command=float(vec[3]))

    def as_vector(self, config: EnvConfig) -> np.ndarray:
        if config.task == "reach":
            return self.delta.copy()
        return np.concatenate([self.delta, [self.grip_command]])


def action_bounds(config: EnvConfig) -> np.ndarray:
    """Per-component action magnitude bound (delta: a_max, grip: 1)."""
    bounds = np.full(config.action_dim, config.a_max)
    if config.task == "pick_place":
        bounds[3] = 1.0
    return bounds


def _clip_box(p: np.ndarray) -> np.ndarray:
    return np.clip(p, WORKSPACE_LOW, WORKSPACE_HIGH)


def ground_truth_goal(config: EnvConfig, obs: EnvObservation) -> np.ndarray:
    """g(obs): gripper position for reach, object position for pick_place."""
    if config.task == "reach":
        return obs.gripper_position.copy()
    return obs.object_position.copy()


def success(achieved: np.ndarray, desired: np.ndarray, threshold: float) -> bool:
    achieved = np.asarray(achieved, dtype=np.float64)
    desired = np.asarray(desired, dtype=np.float64)
    if achieved.shape != desired.shape:
        raise DimensionMismatchError(f"success: achieved {achieved.shape} vs desired {desired.shape}")
    return bool(np.linalg.norm(achieved - desired) < threshold)


def env_reset(config: EnvConfig, rng: np.random.Generator) -> tuple[EnvObservation, np.ndarray]:
    """Uniform gripper, object and goal; the goal is resampled until it is not already achieved."""
    gripper = rng.uniform(WORKSPACE_LOW, WORKSPACE_HIGH, size=3)
    obs = EnvObservation(gripper_position=gripper)
    if config.task == "pick_place":
        obj = rng.uniform(WORKSPACE_LOW, WORKSPACE_HIGH, size=3)
        obs = EnvObservation(gripper_position=gripper, grip_closed=0.0, object_position=obj)

    achieved = ground_truth_goal(config, obs)
    while True:
        desired = rng.uniform(WORKSPACE_LOW, WORKSPACE_HIGH, size=3)
        if np.linalg.norm(achieved - desired) > config.success_threshold:
            return obs, desired


def env_step(config: EnvConfig, state: EnvObservation, action: EnvAction) -> EnvObservation:
    delta = np.clip(as_vector(action.delta, 3, "action delta"), -config.a_max, config.a_max)
    gripper = _clip_box(state.gripper_position + delta)
    if config.task == "reach":
        return EnvObservation(gripper_position=gripper)

    grip_command = float(np.clip(action.grip_command, -1.0, 1.0))
    holding = (
        grip_command > 0.0
        and np.linalg.norm(state.gripper_position - state.object_position) < config.grasp_radius
    )
    obj = state.object_position
    if holding:
        obj = _clip_box(obj + (gripper - state.gripper_position))
    return EnvObservation(
        gripper_position=gripper,
        grip_closed=1.0 if grip_command > 0.0 else 0.0,
        object_position=obj.copy(),
    )


class KinematicEnv:
    """One task instance owning its current state; a thin shell over the pure functions."""

    def __init__(self, config: EnvConfig) -> None:
        self.config = config
        self.state: EnvObservation | None = None
        self.desired_goal: np.ndarray | None = None

    def reset(self, rng: np.random.Generator) -> tuple[EnvObservation, np.ndarray]:
        self.state, self.desired_goal = env_reset(self.config, rng)
        return self.state, self.desired_goal

    def step(self, action_vec: np.ndarray) -> EnvObservation:
        if self.state is None:
            raise RuntimeError("KinematicEnv.step called before reset")
        self.state = env_step(self.config, self.state, EnvAction.from_vector(self.config, action_vec))
        return self.state

    def achieved_goal(self) -> np.ndarray:
        return ground_truth_goal(self.config, self.state)

    def is_success(self) -> bool:
        return success(self.achieved_goal(), self.desired_goal, self.config.success_threshold)
