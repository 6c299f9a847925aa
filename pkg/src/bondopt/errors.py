"""Exception hierarchy shared across the package."""


class DomainError(ValueError):
    """An input violates a documented precondition (bad value, bad shape)."""


class StateError(RuntimeError):
    """An operation was called in a state that does not allow it."""


class BudgetExhaustedError(StateError):
    """The campaign's evaluation budget is spent; no further suggestions."""


class FormatError(ValueError):
    """A persisted document is malformed or has an unsupported schema."""


class ModelError(RuntimeError):
    """Model fitting failed irrecoverably (e.g. covariance never factorizes)."""
