"""Scripted policies that solve the kinematic tasks from ground truth."""

from __future__ import annotations

import numpy as np

from ..core.agent import Agent
from ..core.exceptions import DimensionMismatchError
from .config import EnvConfig
from .kinematic import EnvAction, EnvObservation, KinematicEnv


def _toward(config: EnvConfig, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    return np.clip(dst - src, -config.a_max, config.a_max)


def scripted_oracle_policy(
    config: EnvConfig, obs: EnvObservation, desired_goal: np.ndarray
) -> EnvAction:
    """reach: step toward the goal; pick_place: approach, grasp, carry."""
    goal = np.asarray(desired_goal, dtype=np.float64)
    if config.task == "reach":
        return EnvAction(delta=_toward(config, obs.gripper_position, goal))

    gap = np.linalg.norm(obs.gripper_position - obs.object_position)
    if gap < 0.5 * config.grasp_radius:
        return EnvAction(delta=_toward(config, obs.object_position, goal), grip_command=1.0)
    return EnvAction(delta=_toward(config, obs.gripper_position, obs.object_position), grip_command=-1.0)


class OracleAgent(Agent):
    """Scripted oracle behind the Agent interface; goals must be ground-truth coordinates."""

    def __init__(self, config: EnvConfig) -> None:
        super().__init__(obs_dim=config.obs_dim, goal_dim=3, action_dim=config.action_dim)
        self.config = config

    def act(self, obs, goal, explore, rng, origin=None) -> np.ndarray:
        if len(goal) != self.goal_dim:
            raise DimensionMismatchError(f"Oracle goals are ground-truth vectors of length 3, got {len(goal)}")
        state = EnvObservation.from_vector(self.config, obs)
        return scripted_oracle_policy(self.config, state, goal).as_vector(self.config)


def oracle_success_count(config: EnvConfig, episodes: int, rng: np.random.Generator) -> int:
    """Number of `episodes` the scripted oracle finishes at the goal."""
    env = KinematicEnv(config)
    wins = 0
    for _ in range(episodes):
        state, goal = env.reset(rng)
        for _ in range(config.episode_length):
            state = env.step(scripted_oracle_policy(config, state, goal).as_vector(config))
        wins += env.is_success()
    return wins
