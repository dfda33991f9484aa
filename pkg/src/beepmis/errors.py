"""Exception types shared across the package."""


class BeepMISError(Exception):
    """Base class for all beepmis errors."""


class InvalidParameter(BeepMISError, ValueError):
    """A function argument is outside its documented domain."""


class ParseError(BeepMISError, ValueError):
    """Malformed text input; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class TooLarge(BeepMISError, ValueError):
    """Input exceeds a hard size guard (e.g. exhaustive enumeration)."""


class EmptySample(BeepMISError, ValueError):
    """A statistic was requested over zero records."""
