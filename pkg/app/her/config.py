"""Learner hyperparameters and relabeling strategy."""

from dataclasses import dataclass
from typing import Literal

from ..core.exceptions import ConfigurationError


@dataclass(frozen=True)
class DdpgHyper:
    """DDPG learner settings shared by both levels.

    exploration_sigma is expressed in normalized action units ([-1, 1] per
    component). One cycle is one training episode followed by
    updates_per_cycle optimisation steps.
    """

    gamma: float = 0.98
    actor_lr: float = 1e-3
    critic_lr: float = 1e-3
    tau: float = 0.05
    batch_size: int = 128
    buffer_capacity: int = 100_000
    updates_per_cycle: int = 40
    exploration_sigma: float = 0.1
    epsilon_random: float = 0.2
    action_l2: float = 1.0
    hidden_sizes: tuple[int, ...] = (64, 64)
    hidden_activation: Literal["relu", "tanh"] = "relu"

    def __post_init__(self) -> None:
        if not 0.0 <= self.gamma < 1.0:
            raise ConfigurationError(f"gamma must be in [0, 1), got {self.gamma}")
        if not 0.0 < self.tau <= 1.0:
            raise ConfigurationError(f"tau must be in (0, 1], got {self.tau}")
        for name in ("actor_lr", "critic_lr"):
            if getattr(self, name) <= 0:
                raise ConfigurationError(f"{name} must be > 0, got {getattr(self, name)}")
        for name in ("batch_size", "buffer_capacity"):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be positive, got {getattr(self, name)}")
        if self.updates_per_cycle < 0:
            raise ConfigurationError(f"updates_per_cycle must be >= 0, got {self.updates_per_cycle}")
        if self.exploration_sigma < 0 or self.action_l2 < 0:
            raise ConfigurationError("exploration_sigma and action_l2 must be >= 0")
        if not 0.0 <= self.epsilon_random <= 1.0:
            raise ConfigurationError(f"epsilon_random must be in [0, 1], got {self.epsilon_random}")
        if any(n < 1 for n in self.hidden_sizes):
            raise ConfigurationError(f"hidden_sizes must be positive, got {self.hidden_sizes}")

    @property
    def target_bounds(self) -> tuple[float, float]:
        """Range of attainable returns for rewards in {-1, 0}."""
        return -1.0 / (1.0 - self.gamma), 0.0


@dataclass(frozen=True)
class HerStrategy:
    mode: Literal["future"] = "future"
    k: int = 4

    def __post_init__(self) -> None:
        if self.mode != "future":
            raise ConfigurationError(f"Unsupported HER mode '{self.mode}'")
        if self.k < 1:
            raise ConfigurationError(f"HER k must be >= 1, got {self.k}")
