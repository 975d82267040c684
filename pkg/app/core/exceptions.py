"""Domain exceptions for configuration, numerics and trial execution."""


class ConfigurationError(ValueError):
    """Experiment, environment or transform configuration is invalid."""


class DimensionMismatchError(ValueError):
    """Vector or matrix shapes disagree with the configured dimensions."""


class NonFiniteError(ArithmeticError):
    """A gradient or parameter became NaN or infinite."""


class TrialAbortedError(RuntimeError):
    """A trial could not continue; the harness records it as aborted."""


class ArtifactWriteError(OSError):
    """A result file (CSV, SVG, config) could not be written."""
