"""Fixed-capacity ring replay buffer with uniform minibatch sampling."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from ..core.exceptions import DimensionMismatchError
from ..core.models import Transition

_VECTOR_FIELDS = ("obs", "action", "next_obs", "achieved_goal", "next_achieved_goal", "desired_goal")


@dataclass(frozen=True)
class Batch:
    obs: np.ndarray
    action: np.ndarray
    action_origin: np.ndarray
    next_obs: np.ndarray
    desired_goal: np.ndarray
    reward: np.ndarray
    done: np.ndarray

    def __len__(self) -> int:
        return self.obs.shape[0]


class ReplayBuffer:
    """Ring of transitions; once full, the oldest entries are overwritten first."""

    def __init__(self, capacity: int) -> None:
        if capacity < 1:
            raise ValueError(f"Replay capacity must be positive, got {capacity}")
        self.capacity = capacity
        self._cursor = 0
        self._size = 0
        self._store: dict[str, np.ndarray] | None = None

    def __len__(self) -> int:
        return self._size

    def _allocate(self, t: Transition) -> None:
        store = {
            name: np.zeros((self.capacity, len(getattr(t, name))), dtype=np.float64)
            for name in _VECTOR_FIELDS
        }
        store["action_origin"] = np.zeros((self.capacity, len(t.action)), dtype=np.float64)
        store["has_origin"] = np.zeros(self.capacity, dtype=bool)
        store["reward"] = np.zeros(self.capacity, dtype=np.float64)
        store["done"] = np.zeros(self.capacity, dtype=np.float64)
        self._store = store

    def add(self, t: Transition) -> None:
        if self._store is None:
            self._allocate(t)
        store = self._store
        i = self._cursor
        for name in _VECTOR_FIELDS:
            value = getattr(t, name)
            if len(value) != store[name].shape[1]:
                raise DimensionMismatchError(
                    f"Replay field {name} has length {len(value)}, buffer holds {store[name].shape[1]}"
                )
            store[name][i] = value
        if t.action_origin is None:
            store["action_origin"][i] = 0.0
            store["has_origin"][i] = False
        else:
            store["action_origin"][i] = t.action_origin
            store["has_origin"][i] = True
        store["reward"][i] = t.reward
        store["done"][i] = float(t.done)
        self._cursor = (i + 1) % self.capacity
        self._size = min(self._size + 1, self.capacity)

    def extend(self, transitions: Iterable[Transition]) -> None:
        for t in transitions:
            self.add(t)

    def _ordered_indices(self) -> np.ndarray:
        if self._size < self.capacity:
            return np.arange(self._size)
        return (np.arange(self.capacity) + self._cursor) % self.capacity

    def transitions(self) -> list[Transition]:
        """Stored transitions from oldest to newest."""
        if self._store is None:
            return []
        s = self._store
        return [
            Transition(
                **{name: s[name][i].copy() for name in _VECTOR_FIELDS},
                reward=float(s["reward"][i]),
                done=bool(s["done"][i]),
                action_origin=s["action_origin"][i].copy() if s["has_origin"][i] else None,
            )
            for i in self._ordered_indices()
        ]

    def sample(self, batch_size: int, rng: np.random.Generator) -> Batch:
        if self._size == 0 or self._store is None:
            raise ValueError("Cannot sample from an empty replay buffer")
        idx = rng.integers(0, self._size, size=batch_size)
        s = self._store
        return Batch(
            obs=s["obs"][idx],
            action=s["action"][idx],
            action_origin=s["action_origin"][idx],
            next_obs=s["next_obs"][idx],
            desired_goal=s["desired_goal"][idx],
            reward=s["reward"][idx],
            done=s["done"][idx],
        )
