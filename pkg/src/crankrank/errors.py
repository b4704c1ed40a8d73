"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """Raised when a computation would exceed a hard size cap."""


class ConvergenceError(RuntimeError):
    """Raised when an iterative evaluation cannot reach its tolerance.

    Carries the best error bound achieved so callers can decide whether
    the partial result is still usable.
    """

    def __init__(self, message, achieved_bound=None):
        super().__init__(message)
        self.achieved_bound = achieved_bound
