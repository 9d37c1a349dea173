"""Exception types shared across the package."""


class UltranormError(Exception):
    """Base class for all package-specific errors."""


class LocalizationError(UltranormError):
    """A supremum could not be bracketed within the available index budget.

    Raised with the offending argument and the number of terms inspected so
    the caller can distinguish "needs a bigger budget" from "genuinely
    unbounded" (finite tables with rising terms at the end).
    """

    def __init__(self, message, argument=None, inspected=None):
        super().__init__(message)
        self.argument = argument
        self.inspected = inspected


class ExtensionError(UltranormError):
    """A lazily stored sequence was asked for terms it cannot produce."""


class ConfigError(UltranormError):
    """A run configuration failed validation."""


class WindowError(UltranormError):
    """A window (or window pair) is unusable for the requested transform."""
