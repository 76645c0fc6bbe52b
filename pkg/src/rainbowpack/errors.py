"""Exception hierarchy shared by every module of the package."""


class RainbowPackError(Exception):
    """Base class for all errors raised by this package."""


class InstanceError(RainbowPackError, ValueError):
    """An instance violates a structural precondition of the operation."""


class ParseError(InstanceError):
    """Malformed text input. ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(RainbowPackError, ValueError):
    """A certificate handed to a mapper does not satisfy the mapper's hypothesis."""


class SoundnessError(RainbowPackError, AssertionError):
    """A mapping produced output contradicting a property it must guarantee."""


class SizeError(RainbowPackError):
    """Input exceeds the configured cap of an exhaustive routine."""


class SearchBudgetExceeded(RainbowPackError):
    """A search ran out of its node budget before reaching a verdict."""

    def __init__(self, message, nodes=None):
        self.nodes = nodes
        super().__init__(message)
