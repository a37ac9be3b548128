"""Exception types shared across the package."""


class DerangementLabError(Exception):
    """Base class for errors raised by this package."""


class CapExceeded(DerangementLabError):
    """A configured size cap was hit.

    ``partial`` carries whatever size had been reached when the cap tripped.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class InconsistencyError(DerangementLabError):
    """Two independent computations of the same quantity disagree."""
