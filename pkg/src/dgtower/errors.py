"""Exception types shared across the toolkit."""

from __future__ import annotations

__all__ = [
    "ToolkitError",
    "ArityMismatch",
    "FieldMismatch",
    "BudgetExceeded",
    "NotInSpan",
    "InvalidTower",
    "PolyParseError",
    "DocumentError",
]


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class ArityMismatch(ToolkitError, ValueError):
    """Operands come from rings with different variable counts."""


class FieldMismatch(ToolkitError, ValueError):
    """Operands come from rings over different coefficient fields."""


class BudgetExceeded(ToolkitError):
    """An iteration budget was exhausted; the computation was aborted
    rather than allowed to return a possibly wrong answer."""

    def __init__(self, what: str, budget: int):
        super().__init__(f"{what}: budget of {budget} steps exceeded")
        self.what = what
        self.budget = budget


class NotInSpan(ToolkitError):
    """A lift was requested for an element outside the span; carries the
    irreducible remainder as evidence."""

    def __init__(self, message: str, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class InvalidTower(ToolkitError, ValueError):
    """A tower specification violates a construction invariant."""


class PolyParseError(ToolkitError, ValueError):
    """Syntax error in the textual polynomial grammar."""

    def __init__(self, message: str, col: int = 0, line: int = 0):
        self.col = col
        self.line = line
        where = f" (line {line}, col {col})" if line else f" (col {col})"
        super().__init__(message + where)


class DocumentError(ToolkitError, ValueError):
    """Positioned error while parsing a tower document."""

    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")
