"""Agent construction for each level, learned or scripted."""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np

from ..core.agent import Agent
from ..envs import EnvConfig, OracleAgent, action_bounds
from ..her import DdpgAgent, DdpgHyper
from .config import HacConfig

logger = logging.getLogger(__name__)


class GreedyMasterAgent(Agent):
    """Scripted master: step the sub-goal straight toward the master desired goal.

    Master goals and sub-goals must live in the same space, which experiment
    configs guarantee by allowing scripted policies only with identity transforms.
    """

    def __init__(self, config: HacConfig) -> None:
        super().__init__(obs_dim=0, goal_dim=config.master_goal_dim, action_dim=config.sub_goal_dim)
        self.bound = config.master_offset_bound

    def act(self, obs, goal, explore, rng, origin=None) -> np.ndarray:
        base = np.zeros(self.action_dim) if origin is None else origin
        return base + np.clip(goal - base, -self.bound, self.bound)


@dataclass
class AgentPair:
    master: Agent | None
    sub: Agent

    def agents(self) -> list[Agent]:
        return [a for a in (self.master, self.sub) if a is not None]


def build_learned(env: EnvConfig, hac: HacConfig, hyper: DdpgHyper, rng: np.random.Generator) -> AgentPair:
    sub = DdpgAgent(env.obs_dim, hac.sub_goal_dim, action_bounds(env), hyper, rng)
    master = None
    if hac.levels == 2:
        master = DdpgAgent(
            env.obs_dim,
            hac.master_goal_dim,
            np.full(hac.sub_goal_dim, hac.master_offset_bound),
            replace(hyper, action_l2=hac.master_action_l2),
            rng,
        )
    logger.debug(
        f"Built learned agents: levels={hac.levels}, sub goal dim={hac.sub_goal_dim}, "
        f"master goal dim={hac.master_goal_dim}"
    )
    return AgentPair(master=master, sub=sub)


def build_scripted(env: EnvConfig, hac: HacConfig, hyper: DdpgHyper, rng: np.random.Generator) -> AgentPair:
    master = GreedyMasterAgent(hac) if hac.levels == 2 else None
    return AgentPair(master=master, sub=OracleAgent(env))
