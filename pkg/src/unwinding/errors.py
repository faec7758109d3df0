"""Exception types raised across the package."""


class DegenerateSignalError(ValueError):
    """The signal carries no usable content (e.g. identically zero)."""


class CurveThroughOriginError(ValueError):
    """A boundary curve passes too close to the origin for a winding count."""


class GenerationError(RuntimeError):
    """Rejection sampling exhausted its attempt budget."""


class UndefinedMetricError(ValueError):
    """A metric has no valid samples to be computed on."""


class Converged(Exception):
    """Raised by a single unwinding step when nothing is left to unwind.

    This is a termination signal, not a failure.
    """
