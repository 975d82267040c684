"""Dense multilayer perceptron with manual reverse-mode differentiation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from ..core.exceptions import ConfigurationError, DimensionMismatchError

HiddenActivation = Literal["relu", "tanh"]
OutputActivation = Literal["linear", "tanh"]


@dataclass(frozen=True)
class MlpSpec:
    """Topology of an MLP: (input, hidden..., output) sizes and activations."""

    layer_sizes: tuple[int, ...]
    hidden_activation: HiddenActivation = "relu"
    output_activation: OutputActivation = "linear"

    def __post_init__(self) -> None:
        if len(self.layer_sizes) < 2:
            raise ConfigurationError(f"MlpSpec needs at least 2 layer sizes, got {self.layer_sizes}")
        if any(int(n) < 1 for n in self.layer_sizes):
            raise ConfigurationError(f"MlpSpec layer sizes must be >= 1, got {self.layer_sizes}")
        if self.hidden_activation not in ("relu", "tanh"):
            raise ConfigurationError(f"Unsupported hidden activation '{self.hidden_activation}'")
        if self.output_activation not in ("linear", "tanh"):
            raise ConfigurationError(f"Unsupported output activation '{self.output_activation}'")

    @property
    def input_dim(self) -> int:
        return self.layer_sizes[0]

    @property
    def output_dim(self) -> int:
        return self.layer_sizes[-1]

    @property
    def n_layers(self) -> int:
        return len(self.layer_sizes) - 1

    def activation(self, layer: int) -> str:
        return self.output_activation if layer == self.n_layers - 1 else self.hidden_activation


@dataclass
class MlpParams:
    """Per-layer weights (out x in) and biases (out)."""

    weights: list[np.ndarray]
    biases: list[np.ndarray]

    def copy(self) -> MlpParams:
        return MlpParams([w.copy() for w in self.weights], [b.copy() for b in self.biases])

    def arrays(self) -> list[np.ndarray]:
        """Flat view in (w0, b0, w1, b1, ...) order."""
        out: list[np.ndarray] = []
        for w, b in zip(self.weights, self.biases):
            out.extend((w, b))
        return out

    @classmethod
    def from_arrays(cls, arrays: list[np.ndarray]) -> MlpParams:
        return cls(list(arrays[0::2]), list(arrays[1::2]))

    def zeros_like(self) -> MlpParams:
        return MlpParams([np.zeros_like(w) for w in self.weights], [np.zeros_like(b) for b in self.biases])

    def all_finite(self) -> bool:
        return all(np.all(np.isfinite(a)) for a in self.arrays())

    def check_shapes(self, spec: MlpSpec) -> None:
        if len(self.weights) != spec.n_layers or len(self.biases) != spec.n_layers:
            raise DimensionMismatchError(
                f"Params have {len(self.weights)} layers, spec expects {spec.n_layers}"
            )
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            expected = (spec.layer_sizes[i + 1], spec.layer_sizes[i])
            if w.shape != expected or b.shape != (expected[0],):
                raise DimensionMismatchError(
                    f"Layer {i}: weight {w.shape} / bias {b.shape}, expected {expected} / ({expected[0]},)"
                )


def init_params(spec: MlpSpec, rng: np.random.Generator) -> MlpParams:
    """He-uniform for relu layers, Xavier-uniform for tanh and linear layers; zero biases."""
    weights, biases = [], []
    for i in range(spec.n_layers):
        fan_in, fan_out = spec.layer_sizes[i], spec.layer_sizes[i + 1]
        if spec.activation(i) == "relu":
            limit = np.sqrt(6.0 / fan_in)
        else:
            limit = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return MlpParams(weights, biases)


def _activate(name: str, z: np.ndarray) -> np.ndarray:
    if name == "relu":
        return np.maximum(z, 0.0)
    if name == "tanh":
        return np.tanh(z)
    return z


def _activation_grad(name: str, z: np.ndarray, a: np.ndarray) -> np.ndarray:
    if name == "relu":
        return (z > 0.0).astype(np.float64)
    if name == "tanh":
        return 1.0 - a * a
    return np.ones_like(z)


def _as_batch(spec: MlpSpec, x: np.ndarray) -> tuple[np.ndarray, bool]:
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    batch = x[None, :] if single else x
    if batch.ndim != 2 or batch.shape[1] != spec.input_dim:
        raise DimensionMismatchError(
            f"MLP input has shape {x.shape}, expected (..., {spec.input_dim})"
        )
    return batch, single


def _forward_cache(
    params: MlpParams, spec: MlpSpec, batch: np.ndarray
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Returns (pre-activations, activations); activations[0] is the input."""
    pre: list[np.ndarray] = []
    acts: list[np.ndarray] = [batch]
    for i, (w, b) in enumerate(zip(params.weights, params.biases)):
        z = acts[-1] @ w.T + b
        pre.append(z)
        acts.append(_activate(spec.activation(i), z))
    return pre, acts


def mlp_forward(params: MlpParams, spec: MlpSpec, x: np.ndarray) -> np.ndarray:
    """Evaluate the network on one input vector or a (batch, input_dim) matrix."""
    params.check_shapes(spec)
    batch, single = _as_batch(spec, x)
    _, acts = _forward_cache(params, spec, batch)
    return acts[-1][0] if single else acts[-1]


def mlp_backward(
    params: MlpParams, spec: MlpSpec, x: np.ndarray, output_gradient: np.ndarray
) -> tuple[MlpParams, np.ndarray]:
    """Exact gradients of sum(output * output_gradient) w.r.t. parameters and input.

    For a batch, parameter gradients are summed over rows and the input gradient
    keeps one row per sample.
    """
    params.check_shapes(spec)
    batch, single = _as_batch(spec, x)
    grad = np.asarray(output_gradient, dtype=np.float64)
    grad = grad[None, :] if grad.ndim == 1 else grad
    if grad.shape != (batch.shape[0], spec.output_dim):
        raise DimensionMismatchError(
            f"Output gradient has shape {np.shape(output_gradient)}, expected "
            f"({batch.shape[0]}, {spec.output_dim})"
        )

    pre, acts = _forward_cache(params, spec, batch)
    w_grads: list[np.ndarray] = [np.empty(0)] * spec.n_layers
    b_grads: list[np.ndarray] = [np.empty(0)] * spec.n_layers
    upstream = grad
    for i in reversed(range(spec.n_layers)):
        dz = upstream * _activation_grad(spec.activation(i), pre[i], acts[i + 1])
        w_grads[i] = dz.T @ acts[i]
        b_grads[i] = dz.sum(axis=0)
        upstream = dz @ params.weights[i]

    input_grad = upstream[0] if single else upstream
    return MlpParams(w_grads, b_grads), input_grad


def soft_update(target: MlpParams, online: MlpParams, tau: float) -> MlpParams:
    """Polyak averaging: (1 - tau) * target + tau * online."""
    if not 0.0 < tau <= 1.0:
        raise ConfigurationError(f"tau must be in (0, 1], got {tau}")
    if len(target.weights) != len(online.weights):
        raise DimensionMismatchError("soft_update: target and online have different depth")
    if tau == 1.0:
        return online.copy()
    blended = []
    for t, o in zip(target.arrays(), online.arrays()):
        if t.shape != o.shape:
            raise DimensionMismatchError(f"soft_update: shape {t.shape} vs {o.shape}")
        blended.append((1.0 - tau) * t + tau * o)
    return MlpParams.from_arrays(blended)
