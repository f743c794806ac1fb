class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagreed.

    Never expected on valid input; signals a bug in the library.
    """


class HypothesisError(ValueError):
    """An operation was called outside the hypotheses it needs."""


class PreconditionError(ValueError):
    pass
