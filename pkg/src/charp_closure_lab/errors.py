"""Exception hierarchy shared by the library and the CLI."""


class CCLError(Exception):
    """Base class for every error raised by the package."""


class RingMismatchError(CCLError, ValueError):
    pass


class ExponentOverflowError(CCLError, OverflowError):
    pass


class BudgetExceededError(CCLError):
    """A configured resource limit was hit; ``progress`` describes how far we got."""

    def __init__(self, message: str, progress: dict | None = None):
        super().__init__(message)
        self.progress = progress or {}


class DimensionError(CCLError, ValueError):
    pass


class UnsupportedInputError(CCLError, ValueError):
    pass


class InvalidMultiplierError(CCLError, ValueError):
    pass


class PreconditionError(CCLError, ValueError):
    pass


class CounterexampleFailed(CCLError):
    """One of the F-stability counterexample's assertions did not hold."""

    def __init__(self, step: str, detail: str = ""):
        super().__init__(f"counterexample step failed: {step}" + (f" ({detail})" if detail else ""))
        self.step = step


class DSLSyntaxError(CCLError):
    def __init__(self, message: str, line: int, col: int, expected: frozenset[str] = frozenset()):
        text = f"{line}:{col}: {message}"
        if expected:
            text += " (expected one of: " + ", ".join(sorted(expected)) + ")"
        super().__init__(text)
        self.message = message
        self.line = line
        self.col = col
        self.expected = expected
