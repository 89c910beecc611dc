"""Exception hierarchy shared by all qsing modules."""

from __future__ import annotations


class QsingError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionMismatchError(QsingError):
    """A dimension vector has the wrong length for the setting it is paired with."""


class CompositionError(QsingError):
    """A path is not composable (head of one arrow does not meet tail of the next)."""


class CapacityError(QsingError):
    """An input exceeds a configured size bound."""


class IllegalMoveError(QsingError):
    """A reduction move was applied to a setting that does not admit it."""


class HypothesisError(QsingError):
    """A stated hypothesis is violated (e.g. counting bound on a non-reduced setting)."""


class UnsupportedSettingError(QsingError):
    """The operation is only defined for a restricted class of settings."""


class InconsistencyError(QsingError):
    """Derived data is inconsistent (e.g. a negative arrow count in a local setting)."""


class EmptyProjError(QsingError):
    """The graded algebra has no positive-degree generators; proj is empty."""


class ShapeError(QsingError):
    """A block matrix does not evaluate to a square matrix."""


class BudgetExhaustedError(QsingError):
    """A search ran out of its time budget.  Carries the partial result."""

    def __init__(self, message: str, partial: list | None = None):
        super().__init__(message)
        self.partial = partial if partial is not None else []
