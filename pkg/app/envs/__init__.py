"""Kinematic desk-scale tasks: config, dynamics, ground-truth goals and scripted oracle."""

from .config import TASKS, EnvConfig
from .kinematic import (
    EnvAction,
    EnvObservation,
    KinematicEnv,
    action_bounds,
    env_reset,
    env_step,
    ground_truth_goal,
    success,
)
from .oracle import OracleAgent, oracle_success_count, scripted_oracle_policy

__all__ = [
    "TASKS",
    "EnvAction",
    "EnvConfig",
    "EnvObservation",
    "KinematicEnv",
    "OracleAgent",
    "action_bounds",
    "env_reset",
    "env_step",
    "ground_truth_goal",
    "oracle_success_count",
    "scripted_oracle_policy",
    "success",
]
