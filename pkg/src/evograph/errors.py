"""Shared exception hierarchy.

Everything raised on purpose by this package derives from EvographError so
callers (and the CLI) can distinguish data problems from genuine bugs.
"""


class EvographError(Exception):
    """Base class for all errors raised by evograph."""


class GraphModelError(EvographError):
    """An evolving-graph invariant was violated (self loop, bad index, ...)."""


class CoverageError(EvographError):
    """A layout does not provide a position for every vertex it must cover."""


class EgmlError(EvographError):
    """An EGML document could not be parsed or fails structural validation."""

    def __init__(self, message, issues=None):
        super().__init__(message)
        self.issues = list(issues or [])


class IngestError(EvographError):
    """A vote table or roll-call file could not be interpreted."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}: {message}" if column is None else (
                f"line {line}, column {column}: {message}")
        super().__init__(message)
        self.line = line
        self.column = column
