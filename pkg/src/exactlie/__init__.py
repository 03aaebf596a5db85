"""Exact rational toolkit for Lie algebras with split toral subalgebras and their root systems."""

from .errors import ContractViolation, LieError, Violation

__version__ = "0.1.0"

__all__ = ["ContractViolation", "LieError", "Violation", "__version__"]
