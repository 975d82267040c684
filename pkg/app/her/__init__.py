"""Goal-conditioned DDPG with ring replay and hindsight relabeling."""

from .config import DdpgHyper, HerStrategy
from .ddpg import DdpgAgent, critic_loss_and_grad, critic_targets, ddpg_update, select_action
from .relabel import her_relabel, sparse_reward
from .replay import Batch, ReplayBuffer

__all__ = [
    "Batch",
    "DdpgAgent",
    "DdpgHyper",
    "HerStrategy",
    "ReplayBuffer",
    "critic_loss_and_grad",
    "critic_targets",
    "ddpg_update",
    "her_relabel",
    "select_action",
    "sparse_reward",
]
