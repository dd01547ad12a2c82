class ContractViolation(ValueError):
    """Raised when an input breaks a documented precondition."""


class UnsupportedInput(ValueError):
    """Raised for inputs outside what an operation supports (e.g. degenerate observables)."""
