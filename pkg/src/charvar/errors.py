"""Exception types shared across the package."""


class CharvarError(Exception):
    """Base class for all errors raised by charvar."""


class ParseError(CharvarError, ValueError):
    """Malformed textual input. ``position`` is a 0-based character offset."""

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")

    def pointer(self):
        """Return the input with a caret line under the offending position."""
        return f"{self.text}\n{' ' * self.position}^"


class LaurentError(CharvarError, ValueError):
    """A negative exponent was placed on a variable not registered as Laurent."""


class UnboundVariableError(CharvarError, KeyError):
    """Substitution met a variable that has no binding."""


class BudgetExceeded(CharvarError, RuntimeError):
    """An enumeration would exceed the configured combinatorial budget."""
