"""Exception hierarchy shared by every module."""


class LinextError(Exception):
    pass


class CycleDetected(LinextError, ValueError):
    pass


class LabelOutOfRange(LinextError, IndexError):
    pass


class CapExceeded(LinextError):
    pass


class PreconditionViolated(LinextError, ValueError):
    pass


class InternalContradiction(LinextError, AssertionError):
    """A proven inequality came out violated; this is a bug, never a result."""


class NotFound(LinextError):
    pass


class DegenerateInput(LinextError, ValueError):
    pass


class DegenerateRatio(LinextError, ValueError):
    pass


class DimensionMismatch(LinextError, ValueError):
    pass


class SingularInterpolation(LinextError):
    pass
