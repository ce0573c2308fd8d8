"""Exact computations on SL(2) and SO(4) character varieties of the free group F_2."""

from .errors import BudgetExceeded, CharvarError, LaurentError, ParseError, UnboundVariableError

__version__ = "0.1.0"

__all__ = ["BudgetExceeded", "CharvarError", "LaurentError", "ParseError", "UnboundVariableError"]
