"""Exception hierarchy shared by every plalg module."""

from __future__ import annotations

from typing import Any


class PlalgError(Exception):
    """Base class. ``witness`` carries a JSON-serializable counterexample."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class DimensionError(PlalgError, ValueError):
    pass


class BudgetExceeded(PlalgError):
    """An enumeration would exceed its budget.

    ``count`` is the exact number of items that was refused.
    """

    def __init__(self, what: str, count: int, budget: int):
        super().__init__(f"{what}: {count} items exceed budget {budget}",
                         {"count": count, "budget": budget})
        self.what = what
        self.count = count
        self.budget = budget


class InvalidAlgebra(PlalgError):
    pass


class InvalidMorphism(PlalgError):
    pass


class InvalidModule(PlalgError):
    pass


class NotClosed(PlalgError):
    pass


class NotASubalgebra(NotClosed):
    pass


class NotAnIdeal(PlalgError):
    pass


class NotPStable(PlalgError):
    pass


class NotAbelian(PlalgError):
    pass


class NotAbelianIdeal(PlalgError):
    pass


class NotATorus(PlalgError):
    pass


class NotPure(PlalgError):
    pass


class QuotientNotBoundedExponent(PlalgError):
    pass


class PNilpotentsExist(PlalgError):
    pass


class NoRoot(PlalgError):
    pass


class NotPNilpotentImage(PlalgError):
    pass


class ClassTooLarge(PlalgError):
    pass


class KernelNotSubspace(PlalgError):
    pass


class HypothesisViolated(PlalgError):
    pass


class NoGenerator(PlalgError):
    pass
