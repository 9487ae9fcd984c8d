"""Package-level exception types."""


class InvariantError(RuntimeError):
    """An internal cross-check failed.

    Raised when two computation routes that must agree do not, or when a
    quantity leaves its mathematically guaranteed range by more than
    floating-point slack.  Precondition violations raise ValueError instead.
    """
