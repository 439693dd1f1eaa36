"""Shared error types."""


class ResourceCapError(RuntimeError):
    """A configured resource cap (tree count, ordering count, ...) was hit."""


class NumericError(RuntimeError):
    """A numeric procedure failed to converge; carries diagnostics."""

    def __init__(self, message: str, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics


class DomainError(ValueError):
    """Operation not defined for these arguments (wrong model, constant f, ...)."""
