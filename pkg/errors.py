# Modules
from typing import Iterable


# Base error
class LatticeToolError(ValueError):
    """Base class for every error the toolkit raises on bad input or a failed precondition."""


# Parse errors (cycle notation, group files, expressions, scenarios)
class ParseError(LatticeToolError):
    def __init__(
        self,
        message: str,
        position: int | None = None,
        line: int | None = None,
        expected: Iterable[str] = (),
    ):
        self.message = message
        self.position = position
        self.line = line
        self.expected = tuple(sorted(set(expected)))
        super().__init__(self._render())

    def _render(self) -> str:
        text = self.message
        if self.position is not None:
            text = f"{text} at position {self.position}"
        if self.line is not None:
            text = f"line {self.line}: {text}"
        if self.expected:
            text = f"{text} (expected one of: {', '.join(self.expected)})"
        return text


class PointOutOfRangeError(LatticeToolError):
    pass


class DegreeMismatchError(LatticeToolError):
    pass


# Raised when an exhaustive closure would exceed the configured order cap
class OrderCapExceeded(LatticeToolError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"group order exceeds the cap of {cap} elements")


class NotTransitiveError(LatticeToolError):
    pass


class NotSubgroupError(LatticeToolError):
    pass


class BlockSystemError(LatticeToolError):
    pass


class HypothesisError(LatticeToolError):
    """A documented precondition of an operation does not hold for the given input."""


class LatticeError(LatticeToolError):
    pass


class InvariantViolation(AssertionError):
    """
    A verified claim failed on concrete data.

    Not a user error: either the implementation is wrong or a transcribed
    formula carries a typo. Callers report it with the attached evidence.
    """

    def __init__(self, message: str, evidence: dict | None = None):
        self.evidence = evidence or {}
        super().__init__(message)


class RatFuncError(LatticeToolError):
    """Invalid rational-function operation: zero denominator, 0^0, a non-invertible Möbius map."""
