"""Exception types shared across the package."""


class FFDiophError(Exception):
    """Base class for package errors."""


class PrecisionExhaustedError(FFDiophError):
    """A computation needed digits below the precision floor of its inputs."""


class ParseError(FFDiophError):
    """Malformed literal or config text.

    Carries the character offset of the offending token when known.
    """

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ConfigError(FFDiophError):
    """Invalid experiment configuration."""


class PreconditionError(FFDiophError):
    """A documented operation precondition was violated by the caller."""
