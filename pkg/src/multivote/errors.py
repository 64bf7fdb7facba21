"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: usage/parse problems exit 2,
generator refusals exit 3, exhausted budgets exit 4.
"""

from __future__ import annotations


class UsageError(ValueError):
    """A caller violated a documented precondition (bad index, wrong model, ...)."""


class ParseError(ValueError):
    """An input file could not be parsed; carries the offending position."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None,
                 position: int | None = None):
        self.line = line
        self.column = column
        self.position = position
        where = ""
        if line is not None:
            where = f" (line {line}, column {column}, byte {position})"
        super().__init__(message + where)


class ResourceLimitError(RuntimeError):
    """A configured budget or cap would be exceeded; names the violated bound."""


class ReductionRefusedError(RuntimeError):
    """A generator refused to build an instance that is unsolvable by construction."""


class ExtractionError(RuntimeError):
    """A back-extracted solution failed its independent check.

    This signals a generator or extractor bug, so the failed witness and the
    check that rejected it are kept for inspection.
    """

    def __init__(self, message: str, *, witness=None, check: str = ""):
        self.witness = witness
        self.check = check
        super().__init__(f"{message} [check: {check}] [witness: {witness!r}]")
