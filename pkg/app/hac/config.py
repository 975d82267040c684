"""Hierarchy settings and goal-space wiring choices."""

from dataclasses import dataclass

from ..core.exceptions import ConfigurationError
from ..goalspace import IDENTITY, TransformSpec, output_dim

GROUND_TRUTH_DIM = 3


@dataclass(frozen=True)
class HacConfig:
    """levels = 1 is plain HER on f_s; levels = 2 adds a master proposing subgoals in F_s.

    subgoal_penalty defaults to -horizon_H. master_action_l2 replaces the
    learner action_l2 at the master level.
    """

    horizon_H: int = 10
    subgoal_test_rate: float = 0.3
    subgoal_penalty: float | None = None
    master_offset_bound: float = 0.1
    master_action_l2: float = 0.0
    f_m: TransformSpec = IDENTITY
    f_s: TransformSpec = IDENTITY
    levels: int = 2

    def __post_init__(self) -> None:
        if self.levels not in (1, 2):
            raise ConfigurationError(f"levels must be 1 or 2, got {self.levels}")
        if self.horizon_H < 1:
            raise ConfigurationError(f"horizon_H must be positive, got {self.horizon_H}")
        if not 0.0 <= self.subgoal_test_rate <= 1.0:
            raise ConfigurationError(f"subgoal_test_rate must be in [0, 1], got {self.subgoal_test_rate}")
        if self.master_offset_bound <= 0.0:
            raise ConfigurationError(f"master_offset_bound must be > 0, got {self.master_offset_bound}")
        if self.master_action_l2 < 0.0:
            raise ConfigurationError(f"master_action_l2 must be >= 0, got {self.master_action_l2}")
        if self.subgoal_penalty is None:
            object.__setattr__(self, "subgoal_penalty", -float(self.horizon_H))
        elif self.subgoal_penalty >= 0.0:
            raise ConfigurationError(f"subgoal_penalty must be < 0, got {self.subgoal_penalty}")
        # surfaces dimension errors at construction
        output_dim(self.f_m, GROUND_TRUTH_DIM)
        output_dim(self.f_s, GROUND_TRUTH_DIM)

    @property
    def master_goal_dim(self) -> int:
        return output_dim(self.f_m, GROUND_TRUTH_DIM)

    @property
    def sub_goal_dim(self) -> int:
        """Dimension of F_s, which is also the master action dimension."""
        return output_dim(self.f_s, GROUND_TRUTH_DIM)
