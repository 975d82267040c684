import numpy as np
import pytest

from app.core.models import Transition
from app.her import HerStrategy, her_relabel, sparse_reward

THRESHOLD = 0.1


def _episode(length: int, rng: np.random.Generator) -> list[Transition]:
    positions = np.cumsum(rng.uniform(-0.05, 0.05, size=(length + 1, 3)), axis=0) + 0.5
    desired = np.array([0.9, 0.1, 0.5])
    episode = []
    for t in range(length):
        reward = sparse_reward(positions[t + 1], desired, THRESHOLD)
        episode.append(
            Transition(
                obs=positions[t],
                action=rng.uniform(-0.05, 0.05, size=3),
                next_obs=positions[t + 1],
                achieved_goal=positions[t],
                next_achieved_goal=positions[t + 1],
                desired_goal=desired,
                reward=reward,
                done=reward == 0.0,
            )
        )
    return episode


class TestSparseReward:
    def test_values(self):
        g = np.array([0.5, 0.5, 0.5])
        assert sparse_reward(g, g, THRESHOLD) == 0.0
        assert sparse_reward(g, g + np.array([0.09, 0.0, 0.0]), THRESHOLD) == 0.0
        assert sparse_reward(g, g + np.array([1.0, 0.0, 0.0]), THRESHOLD) == -1.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            sparse_reward(np.zeros(3), np.zeros(4), THRESHOLD)


class TestHerRelabel:
    def test_output_size(self, rng):
        out = her_relabel(_episode(50, rng), HerStrategy(k=4), THRESHOLD, rng)
        assert len(out) == 250

    def test_originals_come_first(self, rng):
        episode = _episode(10, rng)
        out = her_relabel(episode, HerStrategy(k=2), THRESHOLD, rng)
        assert all(a is b for a, b in zip(out[:10], episode))

    def test_final_transition_relabels_to_success(self, rng):
        episode = _episode(1, rng)
        out = her_relabel(episode, HerStrategy(k=3), THRESHOLD, rng)
        for copy in out[1:]:
            np.testing.assert_array_equal(copy.desired_goal, episode[0].next_achieved_goal)
            assert copy.reward == 0.0 and copy.done

    def test_goals_come_from_the_future(self, rng):
        episode = _episode(20, rng)
        k = 4
        out = her_relabel(episode, HerStrategy(k=k), THRESHOLD, rng)
        for t, transition in enumerate(episode):
            for copy in out[20 + t * k : 20 + (t + 1) * k]:
                candidates = [e.next_achieved_goal for e in episode[t:]]
                assert any(np.array_equal(copy.desired_goal, c) for c in candidates)

    def test_rewards_match_recomputation(self, rng):
        out = her_relabel(_episode(50, rng), HerStrategy(k=4), THRESHOLD, rng)
        for tr in out:
            assert tr.reward == sparse_reward(tr.next_achieved_goal, tr.desired_goal, THRESHOLD)
            assert tr.done == (tr.reward == 0.0)

    def test_never_touches_observations_or_actions(self, rng):
        episode = _episode(15, rng)
        out = her_relabel(episode, HerStrategy(k=4), THRESHOLD, rng)
        for t, original in enumerate(episode):
            for copy in out[15 + t * 4 : 15 + (t + 1) * 4]:
                assert copy.obs is original.obs
                assert copy.action is original.action
                assert copy.next_obs is original.next_obs

    def test_empty_episode(self, rng):
        with pytest.raises(ValueError):
            her_relabel([], HerStrategy(), THRESHOLD, rng)

    def test_strategy_validation(self):
        with pytest.raises(ValueError):
            HerStrategy(k=0)
