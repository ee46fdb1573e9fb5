"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class FlatIsoError(Exception):
    """Base class for every error raised by this package."""


class InputError(FlatIsoError, ValueError):
    """Malformed or mismatched input (wrong shapes, non-symmetric Gram, ...)."""


class PreconditionError(FlatIsoError, ValueError):
    """An operation was called outside its documented precondition."""


class StructureError(FlatIsoError):
    """Data does not have the block structure an operation relies on."""


class ScopeError(FlatIsoError):
    """Input lies outside the regime an analysis covers."""


class ConstructionError(FlatIsoError, ValueError):
    """A constructor hypothesis is violated.

    ``hypothesis`` names the failed condition so callers can report it.
    """

    def __init__(self, hypothesis: str, message: str):
        super().__init__(f"{hypothesis}: {message}")
        self.hypothesis = hypothesis


class ParseError(InputError):
    """File content could not be parsed; ``locus`` points at the offending field."""

    def __init__(self, locus: str, message: str):
        super().__init__(f"{locus}: {message}")
        self.locus = locus
        self.message = message
