"""Achieved/desired goal wiring through f_m and f_s."""

from dataclasses import dataclass

import numpy as np

from ..envs import EnvConfig, EnvObservation, ground_truth_goal
from ..goalspace import TransformSpec, apply_transform


@dataclass(frozen=True)
class GoalWiring:
    achieved_goal_m: np.ndarray
    desired_goal_m: np.ndarray
    achieved_goal_s: np.ndarray


def wire_goals(
    env_config: EnvConfig,
    obs: EnvObservation,
    desired_goal_env: np.ndarray,
    f_m: TransformSpec,
    f_s: TransformSpec,
    rng: np.random.Generator,
) -> GoalWiring:
    """achieved_m = f_m(g(obs)), desired_m = f_m(desired_env), achieved_s = f_s(g(obs))."""
    g = ground_truth_goal(env_config, obs)
    return GoalWiring(
        achieved_goal_m=apply_transform(f_m, g, rng),
        desired_goal_m=apply_transform(f_m, desired_goal_env, rng),
        achieved_goal_s=apply_transform(f_s, g, rng),
    )


def achieved(env_config: EnvConfig, obs: EnvObservation, f: TransformSpec, rng: np.random.Generator) -> np.ndarray:
    return apply_transform(f, ground_truth_goal(env_config, obs), rng)
