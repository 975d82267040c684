"""Signal-to-noise ratio of a noisy goal space, in decibels."""

import logging
import math
from collections.abc import Sequence

import numpy as np

from ..core.exceptions import ConfigurationError
from .transforms import TransformSpec, noise_sigma

logger = logging.getLogger(__name__)


def signal_power(goal_samples: Sequence[np.ndarray]) -> float:
    """Mean per-axis (unbiased) variance of the goal samples."""
    samples = np.asarray(goal_samples, dtype=np.float64)
    if samples.ndim != 2 or samples.shape[0] < 2:
        raise ConfigurationError(f"Need at least 2 goal vectors, got array of shape {samples.shape}")
    return float(np.mean(np.var(samples, axis=0, ddof=1)))


def snr_db(spec: TransformSpec | float, goal_samples: Sequence[np.ndarray]) -> float:
    """10 log10(P_signal / sigma^2). Returns NaN when the signal has no variance."""
    sigma = spec if isinstance(spec, (int, float)) else noise_sigma(spec)
    if sigma <= 0.0:
        raise ConfigurationError(f"SNR needs a positive noise sigma, got {sigma}")
    p_signal = signal_power(goal_samples)
    if p_signal == 0.0:
        logger.warning("Goal samples have zero variance; SNR is undefined")
        return math.nan
    return 10.0 * math.log10(p_signal / sigma**2)


def sigma_for_snr(target_db: float, goal_samples: Sequence[np.ndarray]) -> float:
    """Noise sigma that yields `target_db` for the given goal distribution."""
    return math.sqrt(signal_power(goal_samples) / 10.0 ** (target_db / 10.0))
