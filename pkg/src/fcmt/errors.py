"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class FcError(Exception):
    """Base class for all errors raised by fcmt."""


class FrameError(FcError):
    """A frame (or a cell's frame) does not have the required shape."""


class BoundaryMismatch(FrameError):
    """Arguments to a 2-cell composition do not fit together.

    ``index`` names the offending child or boundary position when known.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message if index is None else f"{message} (index {index})")
        self.index = index


class UnknownCell(FcError):
    """A cell, horizontal or vertical 1-cell is not owned by the oracle."""


class BudgetExceeded(FcError):
    """An enumeration produced more elements than the configured budget."""


class ClosureViolation(FcError):
    """A composite of admissible cells failed to be admissible."""


class MalformedUniverse(FcError):
    pass


class MalformedPath(FcError):
    pass


class _Reported(FcError):
    """An error that may carry the failing LawReport as ``report``."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class MalformedPresentation(_Reported):
    """A presentation failed its structural or load-time law checks."""


class ArityBoundExceeded(FcError):
    pass


class NotMonic(FcError):
    pass


class NotACategory(_Reported):
    pass


class NotAMonad(_Reported):
    pass


class NotAFunctor(_Reported):
    pass


class NotAProfunctor(_Reported):
    pass


class NotASubset(FcError):
    pass


class MalformedData(FcError):
    pass


class SourceInvalid(_Reported):
    """The input of a derived construction failed its own law check."""


class ParseError(FcError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class UnknownDemo(FcError):
    pass
