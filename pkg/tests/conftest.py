"""Shared fixtures and the --runslow switch for learning-outcome reproductions."""

import numpy as np
import pytest

from app.core.config import ExperimentConfig
from app.envs import EnvConfig
from app.hac import HacConfig
from app.her import DdpgHyper


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow learning tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def tiny_hyper():
    return DdpgHyper(batch_size=16, buffer_capacity=2000, updates_per_cycle=2, hidden_sizes=(8, 8))


@pytest.fixture
def tiny_config(tiny_hyper):
    """Seconds-scale experiment: 2 trials x 2 epochs of short reach episodes."""
    return ExperimentConfig(
        name="tiny",
        algorithm="her",
        env=EnvConfig(task="reach", episode_length=10),
        hac=HacConfig(horizon_H=3),
        trials=2,
        epochs=2,
        episodes_per_epoch=2,
        eval_episodes=3,
        base_seed=7,
        hyper=tiny_hyper,
    )
