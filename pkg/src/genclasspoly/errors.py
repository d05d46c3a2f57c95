"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


class PrecisionError(RuntimeError):
    """A numerical step could not be completed at the working precision.

    Callers are expected to retry with doubled precision (a bounded
    number of times) before giving up.
    """


class InconsistencyError(RuntimeError):
    """An internal cross-check failed; indicates a bug or bad input data."""
