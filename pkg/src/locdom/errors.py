"""Exception hierarchy shared by all modules."""


class InputError(ValueError):
    """An instance or argument violates a documented precondition."""


class FormatError(InputError):
    """A file could not be parsed.  ``line`` is 1-based, or None."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapExceeded(InputError):
    """An exhaustive routine was asked to run beyond its configured size cap."""


class DecompositionError(InputError):
    """A tree decomposition is structurally broken or invalid for its graph."""
