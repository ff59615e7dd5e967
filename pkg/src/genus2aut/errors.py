"""Exception hierarchy shared by all modules."""


class Genus2Error(Exception):
    """Base class for every error raised by this package."""


class OddClass(Genus2Error):
    """A branch divisor class is not divisible by two."""


class UnknownCase(Genus2Error):
    """A local germ configuration outside the classified table."""


class NotSquarefree(Genus2Error):
    pass


class NonIntegral(Genus2Error):
    """A singularity budget gives non-integral relative invariants."""


class IndivisibleOrder(Genus2Error):
    pass


class LimitsTooSmall(Genus2Error):
    """The search box cannot certify its optimum."""


class Inapplicable(Genus2Error):
    """The hypothesis of a conditional bound fails."""


class BadParameter(Genus2Error):
    pass


class Mismatch(Genus2Error):
    """Two independent computations of the same quantity disagree."""

    def __init__(self, message, left=None, right=None):
        super().__init__(message)
        self.left = left
        self.right = right


class ScenarioSyntaxError(Genus2Error):
    """Malformed scenario text; carries a 1-based line and column."""

    def __init__(self, line, column, message):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class SemanticError(Genus2Error):
    """Well-formed scenario text that describes an impossible setup."""
