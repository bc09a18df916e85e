"""Exception and warning types shared across the package."""


class TruncationWarning(UserWarning):
    """A coefficient tail was dropped or the spectrum looks unresolved."""


class TruncationLossError(RuntimeError):
    """An intermediate coefficient vector lost non-negligible mass."""


class SingularPointError(ValueError):
    """Evaluation requested at a point where the weight is singular."""


class GridTooCoarseError(ValueError):
    """The sample grid cannot resolve the requested finite-difference stencil."""


class HypothesisViolationError(ValueError):
    """An embedding run was requested with exponents outside the valid range."""


class SpectrumShiftError(ValueError):
    """A resolvent shift coincides with an eigenvalue."""


class CsvFormatError(Exception):
    """A CSV input file could not be parsed; carries the offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
