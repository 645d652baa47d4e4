"""Exception hierarchy shared by every module in the package."""

from __future__ import annotations


class RecdetError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(RecdetError):
    """Division by an exact zero.

    Carries the offending index when the division happened while a
    coefficient expression was being evaluated, so callers can report
    the k at which a spec was used below its validity range.
    """

    def __init__(self, message: str, k: int | None = None) -> None:
        super().__init__(message)
        self.k = k


class InexactDivision(RecdetError):
    """Polynomial division left a nonzero remainder."""


class SizeTooLarge(RecdetError):
    """Cofactor expansion refused: the matrix exceeds the size guard."""


class NotHessenberg(RecdetError):
    """The matrix is not flagged, or not shaped, upper Hessenberg."""


class IndexBelowValidity(RecdetError):
    """A fixed-order spec was queried between its order and first_valid_k."""


class SpecSyntaxError(RecdetError):
    """Input text does not match the spec grammar."""

    def __init__(self, line: int, col: int, message: str) -> None:
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
        self.reason = message


class SpecSemanticError(RecdetError):
    """Grammatically valid input whose content is inconsistent."""

    def __init__(self, message: str, line: int | None = None) -> None:
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
        self.reason = message


class MissingParams(RecdetError):
    """The family requires a parameter list and none was given."""


class UnexpectedParams(RecdetError):
    """The family takes no parameters but some were given."""


class OutOfRange(RecdetError):
    """Index outside the valid range of a family or parameter list."""
