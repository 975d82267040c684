"""Two-level hierarchy: master proposes subgoals in F_s, sub-policy acts in the environment."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace

import numpy as np

from ..core.agent import Agent
from ..core.models import MasterTransition, Transition, TrialStreams
from ..envs import KinematicEnv, success
from ..goalspace import apply_transform
from ..her import HerStrategy, her_relabel, sparse_reward
from .config import HacConfig
from .wiring import achieved, wire_goals

logger = logging.getLogger(__name__)


@dataclass
class SubEpisode:
    transitions: list[Transition]
    achieved_final: np.ndarray  # f_s(g(obs)) at the last observation
    achieved_subgoal: bool
    steps_used: int


@dataclass
class HierarchyEpisode:
    """Outcome of one episode.

    master_transitions and sub_transitions are what goes into the replay
    buffers; recorded and hindsight keep every master step as it happened.
    """

    master_transitions: list[MasterTransition]
    sub_transitions: list[Transition]
    env_success: bool
    env_steps: int
    subgoal_tests: int = 0
    recorded: list[MasterTransition] = field(default_factory=list)
    hindsight: list[MasterTransition] = field(default_factory=list)

    @property
    def master_steps(self) -> int:
        return len(self.recorded)


def draw_subgoal_test(config: HacConfig, rng: np.random.Generator) -> bool:
    return bool(rng.random() < config.subgoal_test_rate)


def propose_subgoal(
    master: Agent,
    obs: np.ndarray,
    desired_goal_m: np.ndarray,
    achieved_goal_s: np.ndarray,
    config: HacConfig,
    explore: bool,
    rng: np.random.Generator,
) -> np.ndarray:
    """achieved_goal_s plus a master offset bounded by master_offset_bound per factor."""
    proposal = master.act(obs, desired_goal_m, explore, rng, origin=achieved_goal_s)
    bound = config.master_offset_bound
    return achieved_goal_s + np.clip(proposal - achieved_goal_s, -bound, bound)


def run_sub_episode(
    sub_agent: Agent,
    env: KinematicEnv,
    subgoal: np.ndarray,
    config: HacConfig,
    streams: TrialStreams,
    *,
    explore: bool,
    horizon: int | None = None,
    stop_on_success: bool = True,
    achieved_start: np.ndarray | None = None,
) -> SubEpisode:
    """Run the sub-policy toward `subgoal` for at most `horizon` (default H) steps.

    At least one step is taken; with stop_on_success the run ends as soon as the
    F_s-achieved goal is within the success threshold of the subgoal.
    """
    threshold = env.config.success_threshold
    horizon = config.horizon_H if horizon is None else horizon
    obs = env.state.as_vector()
    ag = achieved(env.config, env.state, config.f_s, streams.goal_noise) if achieved_start is None else achieved_start

    transitions: list[Transition] = []
    for _ in range(horizon):
        action = sub_agent.act(obs, subgoal, explore, streams.explore)
        state = env.step(action)
        next_obs = state.as_vector()
        next_ag = achieved(env.config, state, config.f_s, streams.goal_noise)
        reward = sparse_reward(next_ag, subgoal, threshold)
        transitions.append(
            Transition(
                obs=obs,
                action=action,
                next_obs=next_obs,
                achieved_goal=ag,
                next_achieved_goal=next_ag,
                desired_goal=subgoal,
                reward=reward,
                done=reward == 0.0,
            )
        )
        obs, ag = next_obs, next_ag
        if stop_on_success and reward == 0.0:
            break

    return SubEpisode(
        transitions=transitions,
        achieved_final=ag,
        achieved_subgoal=success(ag, subgoal, threshold),
        steps_used=len(transitions),
    )


def hindsight_action(transition: MasterTransition, achieved_final: np.ndarray) -> MasterTransition:
    """Replace the proposed subgoal by the sub-goal the sub-policy actually reached."""
    if len(achieved_final) != len(transition.action):
        raise ValueError(f"Hindsight action dim {len(achieved_final)} != action dim {len(transition.action)}")
    return replace(transition, action=np.array(achieved_final, dtype=np.float64), is_hindsight_action=True)


def within_offset_bound(transition: MasterTransition, bound: float) -> bool:
    """True when the action is an offset the master can propose from its origin."""
    offset = transition.action - transition.action_origin
    return bool(np.all(np.abs(offset) <= bound * (1.0 + 1e-9)))


def subgoal_test_step(transition: MasterTransition, achieved_subgoal: bool, config: HacConfig) -> MasterTransition:
    """A missed subgoal under testing is penalized and terminates the master transition."""
    if achieved_subgoal:
        return transition
    return replace(transition, reward=float(config.subgoal_penalty), done=True)


def _relabel_each(
    episodes: list[list[Transition]], strategy: HerStrategy, threshold: float, rng: np.random.Generator
) -> list[Transition]:
    return [t for ep in episodes if ep for t in her_relabel(ep, strategy, threshold, rng)]


def run_hierarchy_episode(
    master: Agent | None,
    sub_agent: Agent,
    env: KinematicEnv,
    config: HacConfig,
    streams: TrialStreams,
    *,
    explore: bool,
    strategy: HerStrategy | None = None,
) -> HierarchyEpisode:
    """One full episode of exactly episode_length environment steps.

    With a strategy, returned transitions are relabeled and ready for insertion.
    """
    env_cfg = env.config
    threshold = env_cfg.success_threshold
    length = env_cfg.episode_length
    obs, desired_env = env.reset(streams.env)
    wiring = wire_goals(env_cfg, obs, desired_env, config.f_m, config.f_s, streams.goal_noise)

    if config.levels == 1:
        desired_s = apply_transform(config.f_s, desired_env, streams.goal_noise)
        sub = run_sub_episode(
            sub_agent, env, desired_s, config, streams,
            explore=explore, horizon=length, stop_on_success=False,
            achieved_start=wiring.achieved_goal_s,
        )
        sub_transitions = (
            her_relabel(sub.transitions, strategy, threshold, streams.relabel) if strategy else sub.transitions
        )
        return HierarchyEpisode(
            master_transitions=[],
            sub_transitions=sub_transitions,
            env_success=env.is_success(),
            env_steps=sub.steps_used,
        )

    if master is None:
        raise ValueError("A two-level hierarchy needs a master agent")

    ag_m, dg_m, ag_s = wiring.achieved_goal_m, wiring.desired_goal_m, wiring.achieved_goal_s
    recorded: list[MasterTransition] = []
    hindsight: list[MasterTransition] = []
    penalized: list[MasterTransition] = []
    sub_episodes: list[list[Transition]] = []
    steps = tests = 0

    while steps < length:
        obs_vec = env.state.as_vector()
        testing = explore and draw_subgoal_test(config, streams.subgoal_test)
        subgoal = propose_subgoal(master, obs_vec, dg_m, ag_s, config, explore, streams.explore)
        sub = run_sub_episode(
            sub_agent, env, subgoal, config, streams,
            explore=explore and not testing, horizon=min(config.horizon_H, length - steps),
            achieved_start=ag_s,
        )
        steps += sub.steps_used
        next_ag_m = achieved(env_cfg, env.state, config.f_m, streams.goal_noise)
        reward = sparse_reward(next_ag_m, dg_m, threshold)
        proposed = MasterTransition(
            obs=obs_vec,
            action=subgoal,
            next_obs=env.state.as_vector(),
            achieved_goal=ag_m,
            next_achieved_goal=next_ag_m,
            desired_goal=dg_m,
            reward=reward,
            done=reward == 0.0,
            action_origin=ag_s,
            is_subgoal_test=testing,
        )
        hindsight.append(hindsight_action(proposed, sub.achieved_final))
        if testing:
            tests += 1
            tested = subgoal_test_step(proposed, sub.achieved_subgoal, config)
            if tested is not proposed:
                penalized.append(tested)
            proposed = tested
        recorded.append(proposed)
        sub_episodes.append(sub.transitions)
        ag_m, ag_s = next_ag_m, sub.achieved_final

    if strategy:
        relabeled = her_relabel(hindsight, strategy, threshold, streams.relabel)
        sub_transitions = _relabel_each(sub_episodes, strategy, threshold, streams.relabel)
    else:
        relabeled = hindsight
        sub_transitions = [t for ep in sub_episodes for t in ep]
    # the proposed-action transitions only reach the buffer as missed subgoal tests
    bound = config.master_offset_bound
    master_transitions = penalized + [t for t in relabeled if within_offset_bound(t, bound)]

    logger.debug(
        f"Hierarchy episode: {len(recorded)} master steps, {tests} subgoal tests, {len(penalized)} penalized, "
        f"{len(master_transitions)} master transitions stored"
    )
    return HierarchyEpisode(
        master_transitions=master_transitions,
        sub_transitions=sub_transitions,
        env_success=env.is_success(),
        env_steps=steps,
        subgoal_tests=tests,
        recorded=recorded,
        hindsight=hindsight,
    )
