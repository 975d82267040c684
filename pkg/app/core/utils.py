"""General-purpose utility functions."""

import hashlib
import json
import re

import numpy as np

from .exceptions import DimensionMismatchError


def trial_seed(base_seed: int, trial_index: int) -> int:
    """Seed of trial i is base_seed + i."""
    return base_seed + trial_index


def config_digest(payload: dict) -> str:
    """Stable 8-char identifier of a serialized config (SHA-256 of canonical JSON)."""
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()[:8]


def slugify(name: str) -> str:
    """File-system friendly version of a condition name."""
    slug = re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")
    if not slug:
        raise ValueError(f"Cannot build a file name from {name!r}")
    return slug


def as_vector(values, expected_dim: int | None = None, what: str = "vector") -> np.ndarray:
    """Convert to a 1-D float64 array, optionally checking its length."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise DimensionMismatchError(f"{what} must be 1-D, got shape {arr.shape}")
    if expected_dim is not None and arr.shape[0] != expected_dim:
        raise DimensionMismatchError(
            f"{what} has length {arr.shape[0]}, expected {expected_dim}"
        )
    return arr
