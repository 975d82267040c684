"""Worker pool over independent trials; results are merged by trial index."""

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from .core.config import ExperimentConfig
from .core.models import TrialResult
from .core.utils import trial_seed
from .trial import run_trial

logger = logging.getLogger(__name__)


class TrialPool:
    """Runs the trials of one experiment, in-process for jobs == 1, else in worker processes."""

    def __init__(self, jobs: int = 1) -> None:
        if jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {jobs}")
        self.jobs = jobs

    async def run(self, config: ExperimentConfig, indices: list[int] | None = None) -> list[TrialResult]:
        indices = list(range(config.trials)) if indices is None else indices
        logger.debug(f"Running {len(indices)} trials of '{config.name}' with {self.jobs} worker(s)")

        if self.jobs == 1:
            results = [run_trial(config, i) for i in indices]
        else:
            loop = asyncio.get_running_loop()
            with ProcessPoolExecutor(max_workers=self.jobs) as executor:
                futures = [loop.run_in_executor(executor, partial(run_trial, config, i)) for i in indices]
                outcomes = await asyncio.gather(*futures, return_exceptions=True)
            results = []
            for i, outcome in zip(indices, outcomes):
                if isinstance(outcome, BaseException):
                    logger.error(f"Trial {i} of '{config.name}' crashed in worker: {outcome!r}")
                    outcome = TrialResult(
                        trial_index=i, seed=trial_seed(config.base_seed, i), aborted=True, error=repr(outcome)
                    )
                results.append(outcome)

        return sorted(results, key=lambda r: r.trial_index)

    def run_sync(self, config: ExperimentConfig, indices: list[int] | None = None) -> list[TrialResult]:
        return asyncio.run(self.run(config, indices))
