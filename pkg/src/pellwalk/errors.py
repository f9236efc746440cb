class PellError(Exception):
    """Base class for errors raised by pellwalk."""


class InvalidD(PellError, ValueError):
    """D cannot be used: the walk needs a positive nonsquare integer."""


class DNotPositive(InvalidD):
    pass


class DIsSquare(InvalidD):
    pass


class UnbalancedFormError(PellError, ValueError):
    """A form is not balanced (a > 0, c < 0) or has a zero total."""


class InternalStateError(PellError, RuntimeError):
    """The cycle walk reached a state the theory rules out; this is a bug."""
