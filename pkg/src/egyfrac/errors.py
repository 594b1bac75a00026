"""Package-wide exception types."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; results cannot be trusted.

    Raised when independently computed quantities disagree (e.g. a
    character-sum total that should be a nonnegative integer is not).
    The CLI maps this to exit code 2.
    """
