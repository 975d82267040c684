import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.core.exceptions import ConfigurationError, DimensionMismatchError
from app.envs import (
    EnvAction,
    EnvConfig,
    EnvObservation,
    KinematicEnv,
    env_reset,
    env_step,
    ground_truth_goal,
    success,
)

REACH = EnvConfig(task="reach")
PICK = EnvConfig(task="pick_place")


def _pick_state(gripper, obj, grip=0.0) -> EnvObservation:
    return EnvObservation(np.array(gripper, dtype=float), grip, np.array(obj, dtype=float))


class TestConfig:
    def test_defaults(self):
        assert REACH.success_threshold == 0.1
        assert REACH.episode_length == 50
        assert REACH.a_max == 0.05

    @pytest.mark.parametrize(
        "kwargs", [{"task": "push"}, {"episode_length": 0}, {"success_threshold": 0.0}, {"a_max": -1.0}]
    )
    def test_rejects_invalid(self, kwargs):
        with pytest.raises(ConfigurationError):
            EnvConfig(**kwargs)

    def test_dimensions(self):
        assert (REACH.obs_dim, REACH.action_dim) == (3, 3)
        assert (PICK.obs_dim, PICK.action_dim) == (7, 4)


class TestReset:
    @pytest.mark.parametrize("config", [REACH, PICK])
    def test_seeded_reset_repeats(self, config):
        a_obs, a_goal = env_reset(config, np.random.default_rng(5))
        b_obs, b_goal = env_reset(config, np.random.default_rng(5))
        assert np.array_equal(a_obs.as_vector(), b_obs.as_vector())
        assert np.array_equal(a_goal, b_goal)

    def test_goal_mean_is_workspace_center(self):
        rng = np.random.default_rng(0)
        goals = np.stack([env_reset(REACH, rng)[1] for _ in range(10_000)])
        np.testing.assert_allclose(goals.mean(axis=0), 0.5, atol=0.02)

    @pytest.mark.parametrize("config", [REACH, PICK])
    def test_goal_never_starts_achieved(self, config):
        rng = np.random.default_rng(1)
        for _ in range(2000):
            obs, goal = env_reset(config, rng)
            assert np.linalg.norm(ground_truth_goal(config, obs) - goal) > config.success_threshold

    def test_pick_place_starts_open(self):
        obs, _ = env_reset(PICK, np.random.default_rng(2))
        assert obs.grip_closed == 0.0
        assert obs.object_position is not None


class TestStep:
    def test_zero_delta_keeps_state(self):
        state = EnvObservation(np.array([0.2, 0.4, 0.6]))
        out = env_step(REACH, state, EnvAction(np.zeros(3)))
        assert np.array_equal(out.gripper_position, state.gripper_position)

    def test_clips_to_workspace(self):
        state = EnvObservation(np.array([0.99, 0.5, 0.5]))
        out = env_step(REACH, state, EnvAction(np.array([0.05, 0.0, 0.0])))
        assert out.gripper_position[0] == 1.0

    def test_clips_delta_to_a_max(self):
        state = EnvObservation(np.array([0.5, 0.5, 0.5]))
        out = env_step(REACH, state, EnvAction(np.array([1.0, -1.0, 0.01])))
        np.testing.assert_allclose(out.gripper_position, [0.55, 0.45, 0.51])

    def test_grasped_object_moves_with_gripper(self):
        state = _pick_state([0.4, 0.4, 0.4], [0.41, 0.4, 0.4])
        delta = np.array([0.03, -0.02, 0.01])
        out = env_step(PICK, state, EnvAction(delta, grip_command=1.0))
        np.testing.assert_allclose(out.object_position - state.object_position, delta)
        assert out.grip_closed == 1.0

    def test_open_gripper_leaves_object(self):
        state = _pick_state([0.4, 0.4, 0.4], [0.41, 0.4, 0.4])
        out = env_step(PICK, state, EnvAction(np.array([0.03, 0.0, 0.0]), grip_command=-1.0))
        assert np.array_equal(out.object_position, state.object_position)

    def test_distant_object_is_not_grasped(self):
        state = _pick_state([0.1, 0.1, 0.1], [0.5, 0.5, 0.5])
        out = env_step(PICK, state, EnvAction(np.array([0.05, 0.05, 0.05]), grip_command=1.0))
        assert np.array_equal(out.object_position, state.object_position)

    def test_zero_action_keeps_ground_truth_goal(self):
        state = _pick_state([0.3, 0.2, 0.1], [0.7, 0.1, 0.0])
        out = env_step(PICK, state, EnvAction(np.zeros(3)))
        assert np.array_equal(ground_truth_goal(PICK, out), ground_truth_goal(PICK, state))

    @settings(max_examples=50, deadline=None)
    @given(
        seed=st.integers(0, 2**32 - 1),
        actions=st.lists(
            st.lists(st.floats(-5.0, 5.0, allow_nan=False), min_size=4, max_size=4), min_size=1, max_size=40
        ),
    )
    def test_states_stay_in_unit_cube(self, seed, actions):
        state, _ = env_reset(PICK, np.random.default_rng(seed))
        for a in actions:
            state = env_step(PICK, state, EnvAction.from_vector(PICK, np.array(a)))
            v = state.as_vector()
            assert np.all(v >= 0.0) and np.all(v <= 1.0)

    def test_step_is_pure(self):
        state = _pick_state([0.4, 0.4, 0.4], [0.42, 0.4, 0.4])
        action = EnvAction(np.array([0.01, 0.02, -0.03]), grip_command=0.5)
        a, b = env_step(PICK, state, action), env_step(PICK, state, action)
        assert np.array_equal(a.as_vector(), b.as_vector())


class TestGroundTruthAndSuccess:
    def test_reach_goal_is_gripper(self):
        obs = EnvObservation(np.array([0.2, 0.3, 0.4]))
        np.testing.assert_array_equal(ground_truth_goal(REACH, obs), [0.2, 0.3, 0.4])

    def test_pick_place_goal_is_object(self):
        obs = _pick_state([0.5, 0.5, 0.5], [0.7, 0.1, 0.0])
        np.testing.assert_array_equal(ground_truth_goal(PICK, obs), [0.7, 0.1, 0.0])

    def test_success_semantics(self):
        g = np.array([0.5, 0.5, 0.5])
        assert success(g, g, 0.1)
        assert success(g, g + np.array([0.05, 0.0, 0.0]), 0.1)
        assert not success(g, g + np.array([0.15, 0.0, 0.0]), 0.1)

    def test_success_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            success(np.zeros(3), np.zeros(4), 0.1)


class TestKinematicEnv:
    def test_step_before_reset(self):
        with pytest.raises(RuntimeError):
            KinematicEnv(REACH).step(np.zeros(3))

    def test_wrong_action_length(self):
        env = KinematicEnv(REACH)
        env.reset(np.random.default_rng(0))
        with pytest.raises(DimensionMismatchError):
            env.step(np.zeros(4))

    def test_observation_vector_round_trip(self):
        obs = _pick_state([0.1, 0.2, 0.3], [0.4, 0.5, 0.6], grip=1.0)
        back = EnvObservation.from_vector(PICK, obs.as_vector())
        assert np.array_equal(back.as_vector(), obs.as_vector())
