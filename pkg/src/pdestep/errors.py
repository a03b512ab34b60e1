"""Exception types shared across the package."""


class PdestepError(Exception):
    """Base class for package errors."""


class ConfigError(PdestepError):
    """Invalid configuration or arguments (CLI exit code 2)."""


class NumericalError(PdestepError):
    """Numerical failure during solving or training (CLI exit code 3)."""


class SolverBlowupError(NumericalError):
    """A solver produced non-finite values."""

    def __init__(self, message: str, step: int):
        super().__init__(f"{message} (first bad step: {step})")
        self.step = step


class CFLError(NumericalError):
    """Time step violates the advective CFL condition."""


class TrainingDivergedError(NumericalError):
    """Training loss became non-finite."""

    def __init__(self, message: str, epoch: int, batch: int):
        super().__init__(f"{message} (epoch {epoch}, batch {batch})")
        self.epoch = epoch
        self.batch = batch


class DatasetFormatError(PdestepError):
    """A dataset file is missing, truncated, or has the wrong version."""
