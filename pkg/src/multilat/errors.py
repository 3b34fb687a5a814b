"""Exception hierarchy shared by every module of the package."""


class MultilatError(Exception):
    """Base class for all errors raised by :mod:`multilat`."""


class DuplicateLabel(MultilatError, ValueError):
    pass


class UnknownLabel(MultilatError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class CycleDetected(MultilatError, ValueError):
    pass


class EmptySubset(MultilatError, ValueError):
    pass


class ShapeMismatch(MultilatError, ValueError):
    pass


class NotResiduated(MultilatError, ValueError):
    """A multiplication table admits no residual for some pair."""

    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class UnverifiedInput(MultilatError, ValueError):
    pass


class UnknownName(MultilatError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NotAMaximum(MultilatError, ValueError):
    pass


class SizeTooLarge(MultilatError, ValueError):
    pass


class DomainMismatch(MultilatError, ValueError):
    pass


class BudgetExceeded(MultilatError, RuntimeError):
    pass


class EmptySelection(MultilatError, ValueError):
    pass


class ClosednessViolated(MultilatError, ValueError):
    """Ext or Int is not closed under the pointwise implication."""

    def __init__(self, msg, which=None, pair=None):
        super().__init__(msg)
        self.which = which
        self.pair = pair


class ParseError(MultilatError, ValueError):
    pass
