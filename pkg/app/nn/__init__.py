"""Dense network core: MLP forward/backward, Adam, target blending, gradient check."""

from .adam import AdamState, adam_init, adam_step
from .gradcheck import GradcheckReport, run_gradcheck
from .mlp import MlpParams, MlpSpec, init_params, mlp_backward, mlp_forward, soft_update

__all__ = [
    "AdamState",
    "GradcheckReport",
    "MlpParams",
    "MlpSpec",
    "adam_init",
    "adam_step",
    "init_params",
    "mlp_backward",
    "mlp_forward",
    "run_gradcheck",
    "soft_update",
]
