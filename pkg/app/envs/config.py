"""Environment config model and parser."""

from dataclasses import dataclass
from typing import Literal

from ..core.exceptions import ConfigurationError

Task = Literal["reach", "pick_place"]
TASKS: tuple[str, ...] = ("reach", "pick_place")


@dataclass(frozen=True)
class EnvConfig:
    """Desk-scale kinematic task in the unit cube."""

    task: Task = "reach"
    episode_length: int = 50
    success_threshold: float = 0.1
    a_max: float = 0.05
    grasp_radius: float = 0.05

    def __post_init__(self) -> None:
        if self.task not in TASKS:
            raise ConfigurationError(f"Unknown task '{self.task}' (expected one of {', '.join(TASKS)})")
        if self.episode_length < 1:
            raise ConfigurationError(f"episode_length must be positive, got {self.episode_length}")
        for field_name in ("success_threshold", "a_max", "grasp_radius"):
            if getattr(self, field_name) <= 0:
                raise ConfigurationError(f"{field_name} must be > 0, got {getattr(self, field_name)}")

    @property
    def obs_dim(self) -> int:
        return 3 if self.task == "reach" else 7

    @property
    def action_dim(self) -> int:
        return 3 if self.task == "reach" else 4
