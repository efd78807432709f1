"""
Exception hierarchy for singan.

Every error carries an ``exit_code`` and a human readable ``detail``, the same
pair an HTTP layer would carry as status code and detail. The CLI turns them
into process exit codes in one place (see ``singan.cli``).
"""

from typing import Optional


class SinganError(Exception):
    exit_code = 3

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ParseError(SinganError):
    exit_code = 2

    def __init__(self, message: str, line: int = 1, column: int = 1, snippet: str = ""):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column
        self.snippet = snippet

    def render(self) -> str:
        if not self.snippet:
            return self.detail
        caret = " " * (self.column - 1) + "^"
        return f"{self.detail}\n    {self.snippet}\n    {caret}"


class SemanticError(ParseError):
    pass


class ConfigError(SinganError):
    exit_code = 2


class NotMobius(SinganError):
    exit_code = 2


class PrecisionExhausted(SinganError):
    """All coefficients of the known window cancelled."""

    def __init__(self, detail: str = "all coefficients in the representable window cancel"):
        super().__init__(detail)


class TruncationCapExceeded(SinganError):
    def __init__(self, step: Optional[int], truncation: int):
        super().__init__(f"truncation cap {truncation} exceeded while resolving step {step}")
        self.step = step
        self.truncation = truncation


class DegenerateOrbit(SinganError):
    def __init__(self, step: int, detail: str = "orbit hit a pole"):
        super().__init__(f"{detail} at step {step}")
        self.step = step


class BudgetExceeded(SinganError):
    pass


class ParamRangeError(SinganError):
    pass


class ConstraintViolation(SinganError):
    """Generated parameter values break the recurrence they were generated from."""


class InverseMismatch(SinganError):
    """The backward rule does not undo the forward rule."""


class DegenerateTransform(SinganError):
    pass


class UnsupportedSingularity(SinganError):
    pass


class UnsupportedSpectrum(SinganError):
    pass


class HoldoutMismatch(SinganError):
    def __init__(self, order: int, index: int, expected: int, predicted):
        super().__init__(
            f"order-{order} recurrence fits the training tail but predicts {predicted} at index {index} "
            f"instead of {expected}"
        )
        self.order = order
        self.index = index


class NotAnticonfined(SinganError):
    pass
