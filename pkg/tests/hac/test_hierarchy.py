import numpy as np
import pytest

from app.core.agent import Agent
from app.core.models import MasterTransition, TrialStreams
from app.envs import EnvConfig, EnvObservation, KinematicEnv, OracleAgent, ground_truth_goal, success
from app.goalspace import IDENTITY, ExtraFactors, Rotation, apply_transform, compose
from app.hac import (
    GreedyMasterAgent,
    HacConfig,
    build_learned,
    build_scripted,
    draw_subgoal_test,
    hindsight_action,
    propose_subgoal,
    run_hierarchy_episode,
    run_sub_episode,
    subgoal_test_step,
    within_offset_bound,
)
from app.her import HerStrategy

REACH = EnvConfig(task="reach")


class FixedOffsetAgent(Agent):
    """Always proposes origin + offset."""

    def __init__(self, offset: np.ndarray) -> None:
        super().__init__(obs_dim=3, goal_dim=3, action_dim=len(offset))
        self.offset = np.asarray(offset, dtype=np.float64)

    def act(self, obs, goal, explore, rng, origin=None):
        return (np.zeros(self.action_dim) if origin is None else origin) + self.offset


class IdleAgent(Agent):
    def __init__(self) -> None:
        super().__init__(obs_dim=3, goal_dim=3, action_dim=3)

    def act(self, obs, goal, explore, rng, origin=None):
        return np.zeros(3)


class FartherWallAgent(Agent):
    """Moves a_max along x toward the farther x wall, whatever the goal."""

    def __init__(self) -> None:
        super().__init__(obs_dim=3, goal_dim=3, action_dim=3)

    def act(self, obs, goal, explore, rng, origin=None):
        direction = 1.0 if obs[0] < 0.5 else -1.0
        return np.array([direction * REACH.a_max, 0.0, 0.0])


class GroundTruthOracle(Agent):
    """Scripted oracle that maps sub-goals back to ground truth before acting."""

    def __init__(self, inverse) -> None:
        super().__init__(obs_dim=3, goal_dim=3, action_dim=3)
        self.inverse = inverse
        self.oracle = OracleAgent(REACH)

    def act(self, obs, goal, explore, rng, origin=None):
        return self.oracle.act(obs, apply_transform(self.inverse, goal, rng), explore, rng)


def _env_at(position, config: EnvConfig = REACH) -> KinematicEnv:
    env = KinematicEnv(config)
    env.state = EnvObservation(gripper_position=np.asarray(position, dtype=np.float64))
    env.desired_goal = np.full(3, 0.9)
    return env


def _master_transition(action) -> MasterTransition:
    v = np.zeros(3)
    return MasterTransition(
        obs=v, action=np.asarray(action, dtype=np.float64), next_obs=v, achieved_goal=v,
        next_achieved_goal=v, desired_goal=np.ones(3), reward=-1.0, done=False, action_origin=v,
    )


class TestProposeSubgoal:
    def test_zero_offset_returns_achieved(self, rng):
        ag = np.array([0.3, 0.4, 0.5])
        sg = propose_subgoal(FixedOffsetAgent(np.zeros(3)), ag, np.ones(3), ag, HacConfig(), False, rng)
        np.testing.assert_array_equal(sg, ag)

    def test_offset_is_bounded_per_factor(self, rng):
        ag = np.array([0.3, 0.4, 0.5])
        master = FixedOffsetAgent(np.array([5.0, -5.0, 0.02]))
        sg = propose_subgoal(master, ag, np.ones(3), ag, HacConfig(master_offset_bound=0.1), True, rng)
        np.testing.assert_allclose(sg, [0.4, 0.3, 0.52])
        assert np.all(np.abs(sg - ag) <= 0.1 + 1e-12)

    def test_learned_master_respects_bound(self, rng, tiny_hyper):
        hac = HacConfig(f_s=ExtraFactors(1, 0.0))
        master = build_learned(REACH, hac, tiny_hyper, rng).master
        ag = np.array([0.5, 0.5, 0.5, 0.0])
        for _ in range(200):
            sg = propose_subgoal(master, rng.uniform(size=3), rng.uniform(size=3), ag, hac, True, rng)
            assert sg.shape == (4,)
            assert np.all(np.abs(sg - ag) <= hac.master_offset_bound + 1e-12)

    def test_greedy_master_heads_for_goal(self, rng):
        hac = HacConfig()
        ag = np.array([0.1, 0.9, 0.5])
        sg = propose_subgoal(GreedyMasterAgent(hac), ag, np.array([0.9, 0.1, 0.55]), ag, hac, False, rng)
        np.testing.assert_allclose(sg, [0.2, 0.8, 0.55])


class TestBuildLearned:
    def test_master_has_its_own_action_penalty(self, rng, tiny_hyper):
        pair = build_learned(REACH, HacConfig(), tiny_hyper, rng)
        assert pair.master.hyper.action_l2 == 0.0
        assert pair.sub.hyper.action_l2 == tiny_hyper.action_l2 == 1.0

    def test_master_penalty_is_configurable(self, rng, tiny_hyper):
        pair = build_learned(REACH, HacConfig(master_action_l2=0.25), tiny_hyper, rng)
        assert pair.master.hyper.action_l2 == 0.25
        assert pair.master.hyper.hidden_sizes == tiny_hyper.hidden_sizes


class TestRunSubEpisode:
    def test_subgoal_already_reached_ends_after_one_step(self):
        env = _env_at([0.5, 0.5, 0.5])
        pair = build_scripted(REACH, HacConfig(), None, None)
        sub = run_sub_episode(
            pair.sub, env, np.array([0.5, 0.5, 0.5]), HacConfig(), TrialStreams.from_seed(0), explore=False
        )
        assert sub.steps_used == 1
        assert sub.achieved_subgoal
        assert sub.transitions[0].reward == 0.0 and sub.transitions[0].done

    def test_never_exceeds_horizon(self, rng, tiny_hyper):
        hac = HacConfig(horizon_H=6)
        sub_agent = build_learned(REACH, hac, tiny_hyper, rng).sub
        env = _env_at([0.1, 0.1, 0.1])
        sub = run_sub_episode(sub_agent, env, np.full(3, 0.9), hac, TrialStreams.from_seed(1), explore=True)
        assert 1 <= sub.steps_used <= 6
        assert len(sub.transitions) == sub.steps_used

    def test_runs_full_horizon_without_early_stop(self):
        env = _env_at([0.5, 0.5, 0.5])
        sub = run_sub_episode(
            IdleAgent(), env, np.array([0.5, 0.5, 0.5]), HacConfig(horizon_H=4), TrialStreams.from_seed(0),
            explore=False, stop_on_success=False,
        )
        assert sub.steps_used == 4

    def test_oracle_reaches_nearby_subgoal(self):
        hac = HacConfig(horizon_H=10)
        env = _env_at([0.5, 0.5, 0.5])
        subgoal = np.array([0.6, 0.4, 0.6])
        pair = build_scripted(REACH, hac, None, None)
        sub = run_sub_episode(pair.sub, env, subgoal, hac, TrialStreams.from_seed(0), explore=False)
        assert sub.achieved_subgoal
        assert sub.steps_used <= 2
        assert np.linalg.norm(sub.achieved_final - subgoal) < REACH.success_threshold

    def test_transitions_chain(self):
        env = _env_at([0.2, 0.2, 0.2])
        pair = build_scripted(REACH, HacConfig(), None, None)
        sub = run_sub_episode(pair.sub, env, np.full(3, 0.8), HacConfig(), TrialStreams.from_seed(0), explore=False)
        for prev, nxt in zip(sub.transitions, sub.transitions[1:]):
            np.testing.assert_array_equal(prev.next_obs, nxt.obs)
            np.testing.assert_array_equal(prev.next_achieved_goal, nxt.achieved_goal)


class TestHindsightAndTesting:
    def test_hindsight_action_replaces_subgoal(self):
        original = _master_transition([0.9, 0.9, 0.9])
        reached = np.array([0.55, 0.5, 0.5])
        out = hindsight_action(original, reached)
        np.testing.assert_array_equal(out.action, reached)
        assert out.is_hindsight_action
        assert out.desired_goal is original.desired_goal
        assert not original.is_hindsight_action

    def test_hindsight_action_dimension(self):
        with pytest.raises(ValueError):
            hindsight_action(_master_transition(np.zeros(3)), np.zeros(4))

    def test_missed_subgoal_is_penalized(self):
        out = subgoal_test_step(_master_transition(np.zeros(3)), False, HacConfig(horizon_H=10))
        assert out.reward == -10.0
        assert out.done

    def test_reached_subgoal_is_unchanged(self):
        t = _master_transition(np.zeros(3))
        assert subgoal_test_step(t, True, HacConfig()) is t

    def test_test_frequency(self):
        rng = np.random.default_rng(5)
        hac = HacConfig(subgoal_test_rate=0.3)
        rate = np.mean([draw_subgoal_test(hac, rng) for _ in range(10_000)])
        assert rate == pytest.approx(0.3, abs=0.02)


class TestRunHierarchyEpisode:
    def test_scripted_hierarchy_solves_reach(self):
        hac = HacConfig(horizon_H=10)
        pair = build_scripted(REACH, hac, None, None)
        env = KinematicEnv(REACH)
        streams = TrialStreams.from_seed(11)
        for _ in range(20):
            ep = run_hierarchy_episode(pair.master, pair.sub, env, hac, streams, explore=False)
            assert ep.env_steps == REACH.episode_length
            assert ep.env_success

    def test_scripted_hierarchy_solves_pick_place(self):
        config = EnvConfig(task="pick_place")
        hac = HacConfig(horizon_H=10)
        pair = build_scripted(config, hac, None, None)
        env = KinematicEnv(config)
        streams = TrialStreams.from_seed(12)
        results = [run_hierarchy_episode(pair.master, pair.sub, env, hac, streams, explore=False) for _ in range(20)]
        assert all(ep.env_steps == config.episode_length for ep in results)
        assert all(ep.env_success for ep in results)

    def test_single_level_is_plain_her(self):
        hac = HacConfig(levels=1)
        pair = build_scripted(REACH, hac, None, None)
        assert pair.master is None
        ep = run_hierarchy_episode(None, pair.sub, KinematicEnv(REACH), hac, TrialStreams.from_seed(3), explore=False)
        assert ep.master_transitions == []
        assert len(ep.sub_transitions) == REACH.episode_length
        assert ep.env_success

    def test_two_levels_need_a_master(self):
        with pytest.raises(ValueError):
            run_hierarchy_episode(
                None, IdleAgent(), KinematicEnv(REACH), HacConfig(levels=2), TrialStreams.from_seed(0), explore=False
            )

    def test_step_budget_with_short_final_segment(self):
        config = EnvConfig(task="reach", episode_length=23)
        hac = HacConfig(horizon_H=10)
        ep = run_hierarchy_episode(
            FixedOffsetAgent(np.full(3, 0.1)), IdleAgent(), KinematicEnv(config), hac, TrialStreams.from_seed(0),
            explore=False,
        )
        assert ep.env_steps == 23
        assert ep.master_steps == 3

    def test_every_subgoal_test_is_penalized_when_missed(self):
        hac = HacConfig(horizon_H=10, subgoal_test_rate=1.0)
        ep = run_hierarchy_episode(
            FixedOffsetAgent(np.full(3, 0.1)), IdleAgent(), KinematicEnv(REACH), hac, TrialStreams.from_seed(4),
            explore=True,
        )
        assert ep.subgoal_tests == len(ep.recorded) == 5
        assert all(t.is_subgoal_test and t.reward == -10.0 and t.done for t in ep.recorded)
        penalized = [t for t in ep.master_transitions if not t.is_hindsight_action]
        assert [id(t) for t in penalized] == [id(t) for t in ep.recorded]
        assert len(ep.master_transitions) == 10

    def test_greedy_evaluation_never_tests(self):
        hac = HacConfig(subgoal_test_rate=1.0)
        ep = run_hierarchy_episode(
            FixedOffsetAgent(np.full(3, 0.1)), IdleAgent(), KinematicEnv(REACH), hac, TrialStreams.from_seed(4),
            explore=False,
        )
        assert ep.subgoal_tests == 0

    def test_buffer_gets_hindsight_copies_without_tests(self):
        hac = HacConfig(horizon_H=10)
        pair = build_scripted(REACH, hac, None, None)
        ep = run_hierarchy_episode(
            pair.master, pair.sub, KinematicEnv(REACH), hac, TrialStreams.from_seed(2), explore=False
        )
        assert len(ep.recorded) == len(ep.hindsight) == ep.master_steps > 0
        assert not any(t.is_hindsight_action for t in ep.recorded)
        assert [id(t) for t in ep.master_transitions] == [id(t) for t in ep.hindsight]

    def test_out_of_box_hindsight_is_not_stored(self):
        hac = HacConfig(horizon_H=10)
        ep = run_hierarchy_episode(
            FixedOffsetAgent(np.full(3, 0.1)), FartherWallAgent(), KinematicEnv(REACH), hac,
            TrialStreams.from_seed(8), explore=False,
        )
        assert len(ep.hindsight) == 5
        assert not any(within_offset_bound(t, hac.master_offset_bound) for t in ep.hindsight)
        assert ep.master_transitions == []

    def test_hindsight_replays_at_zero_distance(self, rng, tiny_hyper):
        f_s = compose(Rotation("xy", np.pi / 4), ExtraFactors(1, 0.0))
        hac = HacConfig(horizon_H=5, f_m=Rotation("xy", np.pi / 4), f_s=f_s)
        pair = build_learned(REACH, hac, tiny_hyper, rng)
        ep = run_hierarchy_episode(
            pair.master, pair.sub, KinematicEnv(REACH), hac, TrialStreams.from_seed(9), explore=True
        )
        assert len(ep.hindsight) == ep.master_steps >= 10
        for t in ep.hindsight:
            end = EnvObservation.from_vector(REACH, t.next_obs)
            replayed = apply_transform(f_s, ground_truth_goal(REACH, end), rng)
            assert np.linalg.norm(replayed - t.action) == 0.0
            assert success(replayed, t.action, REACH.success_threshold)

    @pytest.mark.parametrize("plane", ["xy", "yz", "xz"])
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_rotation_leaves_success_pattern_unchanged(self, plane, seed):
        angle = np.pi / 4
        rotation, inverse = Rotation(plane, angle), Rotation(plane, 2 * np.pi - angle)

        def trace(f, back):
            # the wide bound makes the greedy master propose the desired goal itself
            hac = HacConfig(horizon_H=10, master_offset_bound=2.0, f_m=f, f_s=f)
            ep = run_hierarchy_episode(
                GreedyMasterAgent(hac), GroundTruthOracle(back), KinematicEnv(REACH), hac,
                TrialStreams.from_seed(seed), explore=False,
            )
            return [t.reward for t in ep.recorded], [t.reward for t in ep.sub_transitions], ep.env_success

        plain, rotated = trace(IDENTITY, IDENTITY), trace(rotation, inverse)
        assert rotated == plain
        assert plain[2]

    def test_stored_transitions_have_consistent_dimensions(self, rng, tiny_hyper):
        hac = HacConfig(horizon_H=5, f_s=ExtraFactors(1, 0.0))
        pair = build_learned(REACH, hac, tiny_hyper, rng)
        ep = run_hierarchy_episode(
            pair.master, pair.sub, KinematicEnv(REACH), hac, TrialStreams.from_seed(6),
            explore=True, strategy=HerStrategy(k=4),
        )
        assert ep.recorded and ep.sub_transitions
        for t in ep.sub_transitions:
            assert t.obs.shape == (3,) and t.action.shape == (3,)
            assert t.desired_goal.shape == t.achieved_goal.shape == t.next_achieved_goal.shape == (4,)
        for t in ep.recorded + ep.hindsight + ep.master_transitions:
            assert t.action.shape == t.action_origin.shape == (4,)
            assert t.desired_goal.shape == t.achieved_goal.shape == (3,)
        pair.sub.store(ep.sub_transitions)
        pair.master.store(ep.master_transitions)
