"""Goal-space modifications f_m / f_s and SNR reporting."""

from .snr import sigma_for_snr, signal_power, snr_db
from .transforms import (
    IDENTITY,
    PLANES,
    Compose,
    ExtraFactors,
    Identity,
    Noise,
    Rotation,
    TransformSpec,
    apply_transform,
    compose,
    describe,
    noise_sigma,
    output_dim,
    primitives,
    with_noise,
    with_rotation,
)

__all__ = [
    "IDENTITY",
    "PLANES",
    "Compose",
    "ExtraFactors",
    "Identity",
    "Noise",
    "Rotation",
    "TransformSpec",
    "apply_transform",
    "compose",
    "describe",
    "noise_sigma",
    "output_dim",
    "primitives",
    "sigma_for_snr",
    "signal_power",
    "snr_db",
    "with_noise",
    "with_rotation",
]
