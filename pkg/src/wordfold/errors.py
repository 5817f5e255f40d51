"""Exception hierarchy shared by all wordfold modules."""


class WordfoldError(Exception):
    """Base class for every error raised by this package."""


class ParseError(WordfoldError, ValueError):
    """Malformed textual input (word syntax)."""


class DomainError(WordfoldError, ValueError):
    """A precondition on argument values was violated."""


class ResourceLimitError(WordfoldError, RuntimeError):
    """A configured cap or budget would be exceeded."""


class InternalConsistencyError(WordfoldError, RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""
