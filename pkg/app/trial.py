"""Training loop of one seeded trial."""

import logging
import time

from .core.agent import UpdateLosses
from .core.config import ExperimentConfig
from .core.exceptions import NonFiniteError, TrialAbortedError
from .core.models import TrialResult, TrialStreams
from .core.registry import POLICIES
from .core.utils import trial_seed
from .envs import KinematicEnv
from .hac import AgentPair, run_hierarchy_episode

logger = logging.getLogger(__name__)


def _log_losses(prefix: str, losses: list[UpdateLosses]) -> None:
    if not losses:
        return
    critic = sum(u.critic_loss for u in losses) / len(losses)
    actor = sum(u.actor_loss for u in losses) / len(losses)
    logger.debug(f"{prefix}: {len(losses)} updates, critic loss {critic:.4f}, actor loss {actor:.4f}")


def evaluate(config: ExperimentConfig, agents: AgentPair, env: KinematicEnv, streams: TrialStreams) -> float:
    """Fraction of exploration-free episodes that end at the environment goal."""
    wins = 0
    for _ in range(config.eval_episodes):
        episode = run_hierarchy_episode(agents.master, agents.sub, env, config.hac, streams, explore=False)
        wins += episode.env_success
    return wins / config.eval_episodes


def run_trial(config: ExperimentConfig, trial_index: int) -> TrialResult:
    """Train for `epochs`, evaluating after each; deterministic in (config, trial_index)."""
    seed = trial_seed(config.base_seed, trial_index)
    result = TrialResult(trial_index=trial_index, seed=seed)
    started = time.perf_counter()

    streams = TrialStreams.from_seed(seed)
    agents = POLICIES[config.policy].build(config.env, config.hac, config.hyper, streams.init)
    env = KinematicEnv(config.env)
    env_steps = 0

    try:
        for epoch in range(config.epochs):
            for _ in range(config.episodes_per_epoch):
                episode = run_hierarchy_episode(
                    agents.master, agents.sub, env, config.hac, streams, explore=True, strategy=config.her
                )
                env_steps += episode.env_steps
                agents.sub.store(episode.sub_transitions)
                if agents.master is not None:
                    agents.master.store(episode.master_transitions)
                for level, agent in (("master", agents.master), ("sub", agents.sub)):
                    if agent is not None:
                        losses = agent.train(streams.replay)
                        _log_losses(f"[{config.name}] trial {trial_index} epoch {epoch} {level}", losses)
                if not all(a.all_finite() for a in agents.agents()):
                    raise TrialAbortedError(f"non-finite parameters in epoch {epoch}")

            rate = evaluate(config, agents, env, streams)
            result.success_rates.append(rate)
            result.env_steps.append(env_steps)
            logger.info(f"[{config.name}] trial {trial_index} epoch {epoch}: success {rate:.2f}")
    except (NonFiniteError, TrialAbortedError) as e:
        result.aborted = True
        result.error = str(e)
        logger.warning(f"[{config.name}] trial {trial_index} (seed {seed}) aborted: {e}")

    result.wall_time = time.perf_counter() - started
    if not result.aborted:
        final = result.success_rates[-1]
        logger.info(f"[{config.name}] trial {trial_index} done in {result.wall_time:.1f}s, final success {final:.2f}")
    return result
