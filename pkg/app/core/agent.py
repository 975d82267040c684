"""Agent ABC shared by learners and scripted policies."""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Sequence
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from .models import Transition


@dataclass(frozen=True)
class UpdateLosses:
    critic_loss: float
    actor_loss: float


class Agent(ABC):
    """Goal-conditioned policy of one level. One instance per level per trial.

    Actions may be expressed as offsets from an origin (master level) or be
    absolute (environment level, origin None).
    """

    learns: ClassVar[bool] = False

    def __init__(self, obs_dim: int, goal_dim: int, action_dim: int) -> None:
        self.obs_dim = obs_dim
        self.goal_dim = goal_dim
        self.action_dim = action_dim

    @abstractmethod
    def act(
        self,
        obs: np.ndarray,
        goal: np.ndarray,
        explore: bool,
        rng: np.random.Generator,
        origin: np.ndarray | None = None,
    ) -> np.ndarray:
        """Return an action for (obs, goal). Must respect the level's action bounds."""

    def store(self, transitions: Sequence[Transition]) -> None:
        """Insert experience into the agent's replay memory (default: discard)."""

    def train(self, rng: np.random.Generator) -> list[UpdateLosses]:
        """Run the agent's optimisation steps for one cycle (default: nothing to learn)."""
        return []

    def all_finite(self) -> bool:
        return True
