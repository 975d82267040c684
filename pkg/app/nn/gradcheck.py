"""Central finite-difference verification of mlp_backward."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .mlp import MlpParams, MlpSpec, _forward_cache, init_params, mlp_backward, mlp_forward

logger = logging.getLogger(__name__)

FD_STEP = 1e-5
_KINK_MARGIN = 1e-3  # relu pre-activations closer than this to 0 make FD unreliable
_REL_FLOOR = 1e-8


@dataclass(frozen=True)
class GradcheckReport:
    instances: int
    max_relative_error: float
    worst_spec: MlpSpec | None


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    """||a - n|| / max(||a||, ||n||) per parameter array."""
    if analytic.size == 0:
        return 0.0
    denom = max(np.linalg.norm(analytic), np.linalg.norm(numeric), _REL_FLOOR)
    return float(np.linalg.norm(analytic - numeric) / denom)


def random_spec(rng: np.random.Generator, max_hidden_layers: int = 3, max_units: int = 32) -> MlpSpec:
    n_hidden = int(rng.integers(0, max_hidden_layers + 1))
    sizes = [int(rng.integers(1, 9))]
    sizes += [int(rng.integers(1, max_units + 1)) for _ in range(n_hidden)]
    sizes.append(int(rng.integers(1, 5)))
    return MlpSpec(
        layer_sizes=tuple(sizes),
        hidden_activation=str(rng.choice(["relu", "tanh"])),
        output_activation=str(rng.choice(["linear", "tanh"])),
    )


def _near_kink(params: MlpParams, spec: MlpSpec, x: np.ndarray) -> bool:
    pre, _ = _forward_cache(params, spec, x[None, :])
    return any(
        spec.activation(i) == "relu" and np.min(np.abs(z)) < _KINK_MARGIN
        for i, z in enumerate(pre)
    )


def check_instance(
    params: MlpParams, spec: MlpSpec, x: np.ndarray, probe: np.ndarray, h: float = FD_STEP
) -> float:
    """Max relative error of analytic vs central-difference gradients of sum(out * probe)."""

    def objective(p: MlpParams, inp: np.ndarray) -> float:
        return float(np.dot(mlp_forward(p, spec, inp), probe))

    param_grads, input_grad = mlp_backward(params, spec, x, probe)
    worst = 0.0

    arrays = [a.copy() for a in params.arrays()]
    for idx, arr in enumerate(arrays):
        numeric = np.empty_like(arr)
        flat = arr.reshape(-1)
        for j in range(flat.size):
            original = flat[j]
            flat[j] = original + h
            up = objective(MlpParams.from_arrays(arrays), x)
            flat[j] = original - h
            down = objective(MlpParams.from_arrays(arrays), x)
            flat[j] = original
            numeric.reshape(-1)[j] = (up - down) / (2.0 * h)
        worst = max(worst, relative_error(param_grads.arrays()[idx], numeric))

    numeric_x = np.empty_like(x)
    for j in range(x.size):
        shifted = x.copy()
        shifted[j] += h
        up = objective(params, shifted)
        shifted[j] -= 2.0 * h
        down = objective(params, shifted)
        numeric_x[j] = (up - down) / (2.0 * h)
    return max(worst, relative_error(input_grad, numeric_x))


def run_gradcheck(instances: int = 20, seed: int = 0) -> GradcheckReport:
    """Check random networks (<= 3 hidden layers, <= 32 units) against finite differences."""
    rng = np.random.default_rng(seed)
    worst, worst_spec = 0.0, None
    done = 0
    while done < instances:
        spec = random_spec(rng)
        params = init_params(spec, rng)
        for b in params.biases:
            b[:] = rng.normal(scale=0.1, size=b.shape)
        x = rng.normal(size=spec.input_dim)
        if _near_kink(params, spec, x):
            continue
        probe = rng.normal(size=spec.output_dim)
        err = check_instance(params, spec, x, probe)
        logger.debug(f"gradcheck {spec.layer_sizes} {spec.hidden_activation}/{spec.output_activation}: {err:.2e}")
        if err >= worst:
            worst, worst_spec = err, spec
        done += 1
    logger.info(f"Gradient check over {instances} networks: max relative error {worst:.3e}")
    return GradcheckReport(instances=instances, max_relative_error=worst, worst_spec=worst_spec)
