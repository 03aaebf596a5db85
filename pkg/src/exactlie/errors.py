"""Exception hierarchy.

Structural problems with inputs raise; verification routines that look for
counterexamples return a :class:`Violation` (or ``None``) instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class LieError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(LieError, ValueError):
    pass


class NotSplit(LieError):
    """An operator has an irrational eigenvalue or is not diagonalizable."""

    def __init__(self, message: str, operator: int | None = None):
        super().__init__(message)
        self.operator = operator


class NotCommuting(LieError):
    def __init__(self, i: int, j: int):
        super().__init__(f"operators {i} and {j} do not commute")
        self.pair = (i, j)


class JacobiViolation(LieError):
    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"Jacobi identity fails on basis triple ({i}, {j}, {k})")
        self.triple = (i, j, k)


class NotNilpotent(LieError):
    pass


class NotToral(LieError):
    pass


class NotAnIdeal(LieError):
    pass


class NotSymmetric(LieError):
    pass


class NotClosed(LieError):
    pass


class PreconditionError(LieError):
    pass


class UnsupportedFamily(LieError, ValueError):
    pass


class ContractViolation(LieError, AssertionError):
    """A postcondition failed; for a correct input this falsifies a theorem."""

    def __init__(self, violation: "Violation"):
        super().__init__(str(violation))
        self.violation = violation


@dataclass(frozen=True)
class Violation:
    """A failed check together with enough data to reproduce it."""

    check: str
    message: str
    witness: dict[str, Any] = field(default_factory=dict)

    def __str__(self) -> str:
        return f"{self.check}: {self.message}"
