"""Algorithm and policy registry. Everything an experiment can run is listed here."""

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from ..envs import EnvConfig
from ..hac import AgentPair, HacConfig, build_learned, build_scripted
from ..her import DdpgHyper


@dataclass(frozen=True)
class AlgorithmSpec:
    levels: int
    label: str


@dataclass(frozen=True)
class PolicySpec:
    build: Callable[[EnvConfig, HacConfig, DdpgHyper, np.random.Generator], AgentPair]
    learns: bool


# To add an algorithm or policy source: add one entry here.
ALGORITHMS: dict[str, AlgorithmSpec] = {
    "her": AlgorithmSpec(levels=1, label="HER (1-level)"),
    "hac": AlgorithmSpec(levels=2, label="HAC (2-level)"),
}

POLICIES: dict[str, PolicySpec] = {
    "learned": PolicySpec(build=build_learned, learns=True),
    "scripted": PolicySpec(build=build_scripted, learns=False),
}
