"""Sparse goal reward and hindsight relabeling with the `future` strategy."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import replace
from typing import TypeVar

import numpy as np

from ..core.models import Transition
from ..envs.kinematic import success
from .config import HerStrategy

_T = TypeVar("_T", bound=Transition)


def sparse_reward(achieved: np.ndarray, desired: np.ndarray, threshold: float) -> float:
    return 0.0 if success(achieved, desired, threshold) else -1.0


def her_relabel(
    episode: Sequence[_T],
    strategy: HerStrategy,
    threshold: float,
    rng: np.random.Generator,
) -> list[_T]:
    """Originals followed by k relabeled copies per transition.

    Each copy takes as desired goal the next_achieved_goal of a uniformly drawn
    transition at or after it in the same episode; reward and done are
    recomputed. Observation, action and next_obs are never touched.
    """
    episode = list(episode)
    if not episode:
        raise ValueError("Cannot relabel an empty episode")
    horizon = len(episode)
    relabeled: list[_T] = []
    for t, transition in enumerate(episode):
        for future in rng.integers(t, horizon, size=strategy.k):
            goal = episode[int(future)].next_achieved_goal.copy()
            reward = sparse_reward(transition.next_achieved_goal, goal, threshold)
            relabeled.append(replace(transition, desired_goal=goal, reward=reward, done=reward == 0.0))
    return episode + relabeled
