"""Adam optimizer over MlpParams, written as pure functions on value objects."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core.exceptions import ConfigurationError, DimensionMismatchError, NonFiniteError
from .mlp import MlpParams


@dataclass(frozen=True)
class AdamState:
    step_count: int
    first_moment: MlpParams
    second_moment: MlpParams
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8

    def __post_init__(self) -> None:
        if not (0.0 <= self.beta1 < 1.0 and 0.0 <= self.beta2 < 1.0):
            raise ConfigurationError(f"Adam betas must lie in [0, 1), got {self.beta1}, {self.beta2}")
        if self.epsilon <= 0.0:
            raise ConfigurationError(f"Adam epsilon must be > 0, got {self.epsilon}")
        if self.learning_rate <= 0.0:
            raise ConfigurationError(f"Adam learning rate must be > 0, got {self.learning_rate}")


def adam_init(params: MlpParams, learning_rate: float = 1e-3, **kwargs: float) -> AdamState:
    return AdamState(
        step_count=0,
        first_moment=params.zeros_like(),
        second_moment=params.zeros_like(),
        learning_rate=learning_rate,
        **kwargs,
    )


def adam_step(
    state: AdamState, params: MlpParams, gradients: MlpParams
) -> tuple[AdamState, MlpParams]:
    """One bias-corrected Adam step. Gradients are descended (params -= ...)."""
    grads = gradients.arrays()
    for i, g in enumerate(grads):
        if not np.all(np.isfinite(g)):
            layer, kind = divmod(i, 2)
            raise NonFiniteError(
                f"Non-finite {'bias' if kind else 'weight'} gradient in layer {layer} "
                f"at Adam step {state.step_count + 1}"
            )

    step = state.step_count + 1
    b1, b2 = state.beta1, state.beta2
    correction1 = 1.0 - b1**step
    correction2 = 1.0 - b2**step

    new_m, new_v, new_p = [], [], []
    for p, g, m, v in zip(
        params.arrays(), grads, state.first_moment.arrays(), state.second_moment.arrays()
    ):
        if p.shape != g.shape or p.shape != m.shape:
            raise DimensionMismatchError(f"Adam: parameter {p.shape} vs gradient {g.shape}")
        m = b1 * m + (1.0 - b1) * g
        v = b2 * v + (1.0 - b2) * g * g
        m_hat = m / correction1
        v_hat = v / correction2
        new_m.append(m)
        new_v.append(v)
        new_p.append(p - state.learning_rate * m_hat / (np.sqrt(v_hat) + state.epsilon))

    new_state = AdamState(
        step_count=step,
        first_moment=MlpParams.from_arrays(new_m),
        second_moment=MlpParams.from_arrays(new_v),
        learning_rate=state.learning_rate,
        beta1=b1,
        beta2=b2,
        epsilon=state.epsilon,
    )
    return new_state, MlpParams.from_arrays(new_p)
