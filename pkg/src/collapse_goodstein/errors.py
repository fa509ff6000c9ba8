"""Exception hierarchy shared by every module."""


class OrdinalError(Exception):
    """Base class for all library errors."""


class DomainError(OrdinalError, ValueError):
    """An operation was applied outside its precondition."""


class ParseError(OrdinalError, ValueError):
    """Malformed term text. ``position`` is a 0-based offset into the input."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NonCanonicalError(ParseError):
    """Term text whose summands are not in nonincreasing order."""


class BudgetExceeded(OrdinalError):
    """A computation ran past its step or bit limit."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ClassificationDefect(DomainError):
    """classify_gap found no clause; on OT0 inputs this is a bug."""


class ContextError(DomainError):
    """A hole was filled with a term that breaks the canonical order."""
