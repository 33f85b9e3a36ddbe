"""Shared exception types for the tabeval toolkit."""


class TabevalError(Exception):
    """Base class for all tabeval errors."""


class EmptyInputError(TabevalError):
    """Raised when a table string contains no non-blank line."""


class DegenerateInputError(TabevalError):
    """Raised by correlation statistics on zero-variance or mismatched inputs."""


class SchemaError(TabevalError):
    """A dataset line failed validation.

    Carries the 1-based line number of the offending record.
    """

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ReplayMissError(TabevalError):
    """No (or too few) recorded completions exist for a prompt digest."""

    def __init__(self, digest: str, message: str = ""):
        detail = message or "no recorded completions for prompt"
        super().__init__(f"{detail} (sha256={digest})")
        self.digest = digest


class TransportError(TabevalError):
    """The remote completion endpoint could not be reached."""


class MalformedResponseError(TabevalError):
    """The remote completion endpoint returned an unusable payload."""


class KeyMismatchError(TabevalError):
    """Score files to be correlated do not share the same id set."""

    def __init__(self, missing_left, missing_right):
        self.missing_left = sorted(missing_left)
        self.missing_right = sorted(missing_right)
        super().__init__(
            "id sets differ: only in metric file %s; only in human file %s"
            % (self.missing_left, self.missing_right)
        )


class BoundsError(TabevalError):
    """A synthetic-table request or perturbation is out of range."""
