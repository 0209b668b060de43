class DomainError(ValueError):
    """A mathematical precondition of an operation was violated."""


class SizeBoundError(DomainError):
    """A group or closure exceeded the configured size bound."""
