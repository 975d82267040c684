"""Goal-space modification functions: rotation, additive noise, extra factors, composition."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from ..core.exceptions import ConfigurationError, DimensionMismatchError

Plane = Literal["xy", "yz", "xz"]
PLANES: dict[str, tuple[int, int]] = {"xy": (0, 1), "yz": (1, 2), "xz": (0, 2)}
WORKSPACE_CENTER = 0.5


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Rotation:
    """Plane rotation about (center, center, center); the third axis is untouched."""

    plane: Plane
    angle: float
    center: float = WORKSPACE_CENTER

    def __post_init__(self) -> None:
        if self.plane not in PLANES:
            raise ConfigurationError(f"Unknown rotation plane '{self.plane}'")
        if not (0.0 <= self.angle < 2.0 * math.pi):
            raise ConfigurationError(f"Rotation angle must lie in [0, 2*pi), got {self.angle}")


@dataclass(frozen=True)
class Noise:
    """Additive N(0, sigma^2 I) noise, redrawn on every evaluation."""

    sigma: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.sigma) and self.sigma >= 0.0):
            raise ConfigurationError(f"Noise sigma must be finite and >= 0, got {self.sigma}")


@dataclass(frozen=True)
class ExtraFactors:
    """Append `count` constant factors equal to `value`."""

    count: int = 1
    value: float = 0.0

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ConfigurationError(f"extra_factors count must be positive, got {self.count}")


@dataclass(frozen=True)
class Compose:
    """Left-to-right application of its parts."""

    parts: tuple[TransformSpec, ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise ConfigurationError("compose needs at least one transform")


TransformSpec = Identity | Rotation | Noise | ExtraFactors | Compose

IDENTITY = Identity()


def compose(*parts: TransformSpec) -> TransformSpec:
    """Build a composition, flattening nested ones and dropping identities."""
    flat: list[TransformSpec] = []
    for p in parts:
        if isinstance(p, Compose):
            flat.extend(p.parts)
        elif not isinstance(p, Identity):
            flat.append(p)
    if not flat:
        return IDENTITY
    return flat[0] if len(flat) == 1 else Compose(tuple(flat))


def primitives(spec: TransformSpec) -> list[TransformSpec]:
    if isinstance(spec, Compose):
        return [q for p in spec.parts for q in primitives(p)]
    return [] if isinstance(spec, Identity) else [spec]


def output_dim(spec: TransformSpec, input_dim: int) -> int:
    if input_dim < 1:
        raise ConfigurationError(f"input_dim must be >= 1, got {input_dim}")
    match spec:
        case Identity() | Noise():
            return input_dim
        case Rotation(plane=plane):
            if max(PLANES[plane]) >= input_dim:
                raise DimensionMismatchError(
                    f"Rotation in plane {plane} needs at least {max(PLANES[plane]) + 1} dims, got {input_dim}"
                )
            return input_dim
        case ExtraFactors(count=count):
            return input_dim + count
        case Compose(parts=parts):
            dim = input_dim
            for p in parts:
                dim = output_dim(p, dim)
            return dim
    raise ConfigurationError(f"Unknown transform {spec!r}")


def _rotate(spec: Rotation, g: np.ndarray) -> np.ndarray:
    i, j = PLANES[spec.plane]
    c, s = math.cos(spec.angle), math.sin(spec.angle)
    out = g.copy()
    pi, pj = g[i] - spec.center, g[j] - spec.center
    out[i] = c * pi - s * pj + spec.center
    out[j] = s * pi + c * pj + spec.center
    return out


def apply_transform(spec: TransformSpec, g: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """f(g). Noise consumes rng draws only when sigma > 0."""
    g = np.asarray(g, dtype=np.float64)
    if g.ndim != 1:
        raise DimensionMismatchError(f"Goal must be a vector, got shape {g.shape}")
    output_dim(spec, g.shape[0])  # validates dimensions up front

    match spec:
        case Identity():
            return g
        case Rotation():
            return _rotate(spec, g)
        case Noise(sigma=sigma):
            if sigma == 0.0:
                return g.copy()
            return g + rng.normal(0.0, sigma, size=g.shape)
        case ExtraFactors(count=count, value=value):
            return np.concatenate([g, np.full(count, value, dtype=np.float64)])
        case Compose(parts=parts):
            out = g
            for p in parts:
                out = apply_transform(p, out, rng)
            return out
    raise ConfigurationError(f"Unknown transform {spec!r}")


def noise_sigma(spec: TransformSpec) -> float:
    """Per-axis standard deviation of all noise stages combined."""
    return math.sqrt(sum(p.sigma**2 for p in primitives(spec) if isinstance(p, Noise)))


def with_rotation(spec: TransformSpec, plane: Plane, angle: float) -> TransformSpec:
    """Set every rotation to (plane, angle); prepend one if there is none."""
    parts = primitives(spec)
    if any(isinstance(p, Rotation) for p in parts):
        return compose(*(replace(p, plane=plane, angle=angle) if isinstance(p, Rotation) else p for p in parts))
    return compose(Rotation(plane, angle), *parts)


def with_noise(spec: TransformSpec, sigma: float) -> TransformSpec:
    """Set every noise stage to sigma; append one if there is none."""
    parts = primitives(spec)
    if any(isinstance(p, Noise) for p in parts):
        return compose(*(Noise(sigma) if isinstance(p, Noise) else p for p in parts))
    return compose(*parts, Noise(sigma))


def describe(spec: TransformSpec) -> str:
    parts = primitives(spec)
    if not parts:
        return "identity"
    labels = []
    for p in parts:
        match p:
            case Rotation(plane=plane, angle=angle):
                labels.append(f"rotation({plane},{angle:.4g})")
            case Noise(sigma=sigma):
                labels.append(f"noise({sigma:.4g})")
            case ExtraFactors(count=count, value=value):
                labels.append(f"extra({count},{value:g})")
    return "+".join(labels)
