"""Exception types shared across the package."""


class UrwordError(Exception):
    """Base class for all package-specific errors."""


class SizeLimitError(UrwordError):
    """A word-producing operation would exceed the materialization cap.

    Carries the exact predicted length so callers can report or re-plan
    without re-deriving it.
    """

    def __init__(self, predicted: int, cap: int, what: str = "word"):
        self.predicted = int(predicted)
        self.cap = int(cap)
        self.what = what
        super().__init__(
            f"{what} would need {self.predicted} letters, cap is {self.cap}"
        )


class FamilyConfigError(UrwordError):
    """A parameter family description is malformed or structurally invalid."""


class FamilyDepthError(UrwordError):
    """A finite custom family was queried beyond its last defined level."""

    def __init__(self, level: int, depth: int):
        self.level = int(level)
        self.depth = int(depth)
        super().__init__(
            f"level {level} requested but only levels 0..{depth - 1} are defined"
        )


class InvalidFamilyError(UrwordError):
    """A symbolic operation refused to run past the last validated level."""


class ShortFactorError(UrwordError):
    """Desubstitution input contains no '10' and cannot synchronize."""


class NotAFactorError(UrwordError):
    """Desubstitution input does not decompose into substitution images."""


class IndexBudgetError(UrwordError):
    """Building a factor index would exceed the configured memory budget."""

    def __init__(self, predicted_bytes: int, budget: int):
        self.predicted_bytes = int(predicted_bytes)
        self.budget = int(budget)
        super().__init__(
            f"index would need about {predicted_bytes} bytes, budget is {budget}"
        )


class IndexRangeError(UrwordError):
    """A factor-index query fell outside the indexed length range."""


class TheoryViolation(UrwordError):
    """An exact identity that must hold was found violated (internal check)."""
