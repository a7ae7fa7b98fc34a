"""Exception hierarchy shared by the library and the CLI.

The CLI maps these onto exit codes: input problems exit 1, refused
computations exit 2, failed identity checks exit 3.
"""


class ParseError(ValueError):
    """Malformed polynomial, cone or covector literal."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class RefusedComputation(ValueError):
    """A precondition of the mathematics is not met (degenerate face, guard)."""


class DegenerateFaceError(RefusedComputation):
    pass


class GuardExceeded(RefusedComputation):
    pass


class InconsistencyError(RuntimeError):
    """Two routes that must agree did not."""
