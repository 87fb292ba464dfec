"""Exception types shared across the package."""


class PencilflowError(Exception):
    """Base class for all errors raised by this package."""

    kind = "error"


class ConfigError(PencilflowError):
    """Invalid parameter or configuration value."""

    kind = "config"


class InputError(PencilflowError):
    """Input image missing, unreadable, or malformed."""

    kind = "input"


class OutputError(PencilflowError):
    """Output path unwritable or export failed."""

    kind = "output"


class LogError(PencilflowError):
    """Stroke log file malformed or of an unsupported version."""

    kind = "log"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ReplayError(PencilflowError):
    """A stroke log entry cannot be replayed."""

    kind = "replay"

    def __init__(self, message, index=None):
        if index is not None:
            message = f"stroke {index}: {message}"
        super().__init__(message)
        self.index = index
