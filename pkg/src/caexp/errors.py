"""Error types shared across the package.

Exit-code contract for the CLI: usage errors map to 2, resource errors to 3,
failed verification assertions to 1.
"""


class UsageError(ValueError):
    """Caller violated a precondition (bad arguments, mismatched lattices, ...)."""


class ResourceLimitError(RuntimeError):
    """A bounded computation exceeded its configured budget.

    ``last_completed`` carries the last fully finished step/count when the
    limit was hit mid-run, ``requested`` the size that was refused up front.
    """

    def __init__(self, message: str, last_completed: int | None = None,
                 requested: int | None = None):
        super().__init__(message)
        self.last_completed = last_completed
        self.requested = requested
