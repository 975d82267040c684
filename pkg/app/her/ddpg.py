"""Goal-conditioned DDPG learner (universal value function over obs and goal)."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from ..core.agent import Agent, UpdateLosses
from ..core.models import Transition
from ..nn import AdamState, MlpParams, MlpSpec, adam_init, adam_step, init_params, mlp_backward, mlp_forward, soft_update
from .config import DdpgHyper
from .replay import Batch, ReplayBuffer

logger = logging.getLogger(__name__)


class DdpgAgent(Agent):
    """Actor pi(obs, goal) -> normalized action in [-1, 1]; critic Q(obs, goal, action).

    Environment actions are action_scale * u. For offset actions (master level)
    the action is origin + action_scale * u and the critic consumes u.
    """

    learns = True

    def __init__(
        self,
        obs_dim: int,
        goal_dim: int,
        action_scale: np.ndarray,
        hyper: DdpgHyper,
        rng: np.random.Generator,
    ) -> None:
        action_scale = np.asarray(action_scale, dtype=np.float64)
        super().__init__(obs_dim=obs_dim, goal_dim=goal_dim, action_dim=action_scale.shape[0])
        self.action_scale = action_scale
        self.hyper = hyper

        hidden = tuple(hyper.hidden_sizes)
        self.actor_spec = MlpSpec(
            (obs_dim + goal_dim, *hidden, self.action_dim), hyper.hidden_activation, "tanh"
        )
        self.critic_spec = MlpSpec(
            (obs_dim + goal_dim + self.action_dim, *hidden, 1), hyper.hidden_activation, "linear"
        )
        self.actor: MlpParams = init_params(self.actor_spec, rng)
        self.critic: MlpParams = init_params(self.critic_spec, rng)
        self.actor_target = self.actor.copy()
        self.critic_target = self.critic.copy()
        self.actor_opt: AdamState = adam_init(self.actor, hyper.actor_lr)
        self.critic_opt: AdamState = adam_init(self.critic, hyper.critic_lr)
        self.buffer = ReplayBuffer(hyper.buffer_capacity)

    def act(self, obs, goal, explore, rng, origin=None) -> np.ndarray:
        return select_action(self, obs, goal, explore, self.hyper, rng, origin)

    def store(self, transitions: Sequence[Transition]) -> None:
        self.buffer.extend(transitions)

    def train(self, rng: np.random.Generator) -> list[UpdateLosses]:
        if len(self.buffer) < self.hyper.batch_size:
            logger.warning(f"Replay holds {len(self.buffer)} transitions, need {self.hyper.batch_size}; updates skipped")
            return []
        losses = []
        for _ in range(self.hyper.updates_per_cycle):
            _, step_losses = ddpg_update(self, self.buffer, self.hyper, rng)
            if step_losses:
                losses.append(step_losses)
        return losses

    def all_finite(self) -> bool:
        return all(p.all_finite() for p in (self.actor, self.critic, self.actor_target, self.critic_target))

    def normalize(self, action: np.ndarray, origin: np.ndarray) -> np.ndarray:
        return (action - origin) / self.action_scale


def select_action(
    agent: DdpgAgent,
    obs: np.ndarray,
    desired_goal: np.ndarray,
    explore: bool,
    hyper: DdpgHyper,
    rng: np.random.Generator,
    origin: np.ndarray | None = None,
) -> np.ndarray:
    """Actor output scaled to bounds; with exploration, Gaussian noise and epsilon-random actions."""
    u = mlp_forward(agent.actor, agent.actor_spec, np.concatenate([obs, desired_goal]))
    if explore:
        u = u + rng.normal(0.0, hyper.exploration_sigma, size=u.shape)
        if rng.random() < hyper.epsilon_random:
            u = rng.uniform(-1.0, 1.0, size=u.shape)
    u = np.clip(u, -1.0, 1.0)
    base = np.zeros_like(u) if origin is None else np.asarray(origin, dtype=np.float64)
    return base + agent.action_scale * u


def critic_targets(agent: DdpgAgent, batch: Batch, hyper: DdpgHyper) -> np.ndarray:
    """y = r + gamma (1 - done) Q'(s', g, pi'(s', g)), clipped to the attainable return range."""
    next_in = np.concatenate([batch.next_obs, batch.desired_goal], axis=1)
    next_u = mlp_forward(agent.actor_target, agent.actor_spec, next_in)
    next_q = mlp_forward(agent.critic_target, agent.critic_spec, np.concatenate([next_in, next_u], axis=1))[:, 0]
    y = batch.reward + hyper.gamma * (1.0 - batch.done) * next_q
    low, high = hyper.target_bounds
    return np.clip(y, low, high)


def critic_loss_and_grad(
    critic: MlpParams, spec: MlpSpec, inputs: np.ndarray, targets: np.ndarray
) -> tuple[float, MlpParams]:
    """Mean squared error to fixed targets and its parameter gradient."""
    q = mlp_forward(critic, spec, inputs)[:, 0]
    err = q - targets
    grads, _ = mlp_backward(critic, spec, inputs, (2.0 * err / len(err))[:, None])
    return float(np.mean(err**2)), grads


def actor_loss_and_grad(agent: DdpgAgent, states: np.ndarray, hyper: DdpgHyper) -> tuple[float, MlpParams]:
    """-mean Q(s, g, pi(s, g)) + action_l2 * mean(pi^2) and its actor gradient."""
    n = states.shape[0]
    u = mlp_forward(agent.actor, agent.actor_spec, states)
    critic_in = np.concatenate([states, u], axis=1)
    q = mlp_forward(agent.critic, agent.critic_spec, critic_in)[:, 0]
    _, dq_din = mlp_backward(agent.critic, agent.critic_spec, critic_in, np.full((n, 1), -1.0 / n))
    du = dq_din[:, -agent.action_dim :] + 2.0 * hyper.action_l2 * u / u.size
    grads, _ = mlp_backward(agent.actor, agent.actor_spec, states, du)
    loss = -float(np.mean(q)) + hyper.action_l2 * float(np.mean(u**2))
    return loss, grads


def ddpg_update(
    agent: DdpgAgent, buffer: ReplayBuffer, hyper: DdpgHyper, rng: np.random.Generator
) -> tuple[DdpgAgent, UpdateLosses | None]:
    """One critic step, one actor step and a soft target update on a uniform minibatch."""
    if len(buffer) < hyper.batch_size:
        logger.warning(f"Replay holds {len(buffer)} transitions, need {hyper.batch_size}; update skipped")
        return agent, None

    batch = buffer.sample(hyper.batch_size, rng)
    states = np.concatenate([batch.obs, batch.desired_goal], axis=1)
    u = agent.normalize(batch.action, batch.action_origin)

    y = critic_targets(agent, batch, hyper)
    critic_loss, critic_grads = critic_loss_and_grad(
        agent.critic, agent.critic_spec, np.concatenate([states, u], axis=1), y
    )
    agent.critic_opt, agent.critic = adam_step(agent.critic_opt, agent.critic, critic_grads)

    actor_loss, actor_grads = actor_loss_and_grad(agent, states, hyper)
    agent.actor_opt, agent.actor = adam_step(agent.actor_opt, agent.actor, actor_grads)

    agent.actor_target = soft_update(agent.actor_target, agent.actor, hyper.tau)
    agent.critic_target = soft_update(agent.critic_target, agent.critic, hyper.tau)
    return agent, UpdateLosses(critic_loss=critic_loss, actor_loss=actor_loss)
