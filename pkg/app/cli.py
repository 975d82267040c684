"""Command-line surface: run, scan, compare, gradcheck, oracle."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .core.config import ConfigManager, ExperimentConfig
from .core.exceptions import ArtifactWriteError, ConfigurationError, DimensionMismatchError
from .envs import EnvConfig, oracle_success_count
from .experiment_manager import ExperimentManager
from .nn import run_gradcheck
from .report import final_median

logger = logging.getLogger(__name__)

GRADCHECK_TOLERANCE = 1e-4
ORACLE_REQUIRED = {"reach": 1.0, "pick_place": 0.95}


def configure_logging() -> None:
    logging.basicConfig(
        level=getattr(logging, os.getenv("LOG_LEVEL", "INFO").upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="goalspace-lab", description="Goal-space perturbation experiments for HER and HAC"
    )
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--out", type=Path, default=Path("results"), help="output directory")
    shared.add_argument("--trials", type=int, help="override the number of trials")
    shared.add_argument("--epochs", type=int, help="override the number of epochs")
    shared.add_argument("--seed", type=int, help="override base_seed")
    shared.add_argument("--jobs", type=int, default=1, help="parallel trial workers")
    shared.add_argument("--x-axis", choices=["epoch", "samples"], default="epoch", help="plot x axis")

    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("run", "run a single experiment"),
        ("scan", "run the scan declared in the config file"),
        ("compare", "run the eight-condition perturbation comparison for HER and HAC"),
    ):
        p = sub.add_parser(name, parents=[shared], help=text)
        p.add_argument("config", type=Path, help="experiment JSON file")

    sub.add_parser("gradcheck", help="check analytic against finite-difference gradients")

    oracle = sub.add_parser("oracle", help="environment solvability suite with the scripted oracle")
    oracle.add_argument("--episodes", type=int, default=100)
    oracle.add_argument("--seed", type=int, default=0)
    return parser


def _with_overrides(config: ExperimentConfig, args: argparse.Namespace) -> ExperimentConfig:
    overrides = {}
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.epochs is not None:
        overrides["epochs"] = args.epochs
    if args.seed is not None:
        overrides["base_seed"] = args.seed
    return replace(config, **overrides) if overrides else config


def _cmd_gradcheck() -> int:
    report = run_gradcheck()
    print(f"gradcheck: {report.instances} instances, max relative error {report.max_relative_error:.3e}")
    if report.max_relative_error >= GRADCHECK_TOLERANCE:
        logger.error(f"Gradient check failed on {report.worst_spec}")
        return 1
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    if args.episodes < 1 or args.seed < 0:
        raise ConfigurationError(f"oracle needs --episodes >= 1 and --seed >= 0, got {args.episodes} and {args.seed}")
    ok = True
    for task, required in ORACLE_REQUIRED.items():
        rng = np.random.default_rng(args.seed)
        wins = oracle_success_count(EnvConfig(task=task), args.episodes, rng)
        print(f"oracle {task}: {wins}/{args.episodes}")
        ok &= wins >= required * args.episodes
    return 0 if ok else 1


def _cmd_experiment(args: argparse.Namespace) -> int:
    if args.jobs < 1:
        raise ConfigurationError(f"--jobs must be >= 1, got {args.jobs}")
    manager = ConfigManager(args.config)
    config = _with_overrides(manager.load(), args)
    runner = ExperimentManager(args.out, jobs=args.jobs, x_axis=args.x_axis)

    if args.command == "run":
        result = runner.run(config)
        final = final_median(result.aggregate)
        print(f"{config.name}: final median success {final:.3f}")
    elif args.command == "scan":
        if manager.scan is None:
            raise ConfigurationError(f"{args.config.name}: no 'scan' section")
        for value, result in runner.scan(replace(manager.scan, base=config)):
            final = final_median(result.aggregate)
            print(f"{manager.scan.kind}={value:.4g}: final median success {final:.3f}")
    else:
        for algorithm, conditions in runner.compare(config).items():
            for condition, result in conditions.items():
                final = final_median(result.aggregate)
                print(f"{algorithm} {condition}: final median success {final:.3f}")
    return 0


def main(argv: list[str] | None = None) -> int:
    configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        if args.command == "gradcheck":
            return _cmd_gradcheck()
        if args.command == "oracle":
            return _cmd_oracle(args)
        return _cmd_experiment(args)
    except (ConfigurationError, DimensionMismatchError, ArtifactWriteError) as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return 1
