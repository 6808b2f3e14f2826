"""Exception hierarchy shared by all modules."""


class SphtwistError(Exception):
    """Base class for computational errors raised by the package."""


class UnsupportedDiagram(SphtwistError, ValueError):
    pass


class InsufficientWindow(SphtwistError):
    """The materialized window does not contain everything a computation needs."""


class AmbiguousAction(SphtwistError):
    """More than one vertex map is consistent with the twist constraints."""

    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = list(candidates)


class InvalidInput(SphtwistError, ValueError):
    pass


class HypothesisViolated(SphtwistError, ValueError):
    pass


class ValidationFailure(SphtwistError):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class SelfinjectivityViolation(SphtwistError):
    pass


class MismatchedParameter(SphtwistError, ValueError):
    pass


class WordSyntaxError(SphtwistError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position
