"""Exception types shared across the package."""


class ToepspecError(Exception):
    """Base class for analysis failures."""


class ExceptionalLevelError(ToepspecError):
    """The requested level is too close to a critical or threshold value."""


class InadmissibleIntervalError(ToepspecError):
    """The requested spectral interval touches the exceptional set."""


class CountingError(ToepspecError):
    """The two crossing counts disagree; indicates a root-finder defect."""


class QuadratureError(ToepspecError):
    """Panel refinement hit its depth cap before reaching the tolerance."""

    def __init__(self, message, achieved_tol=None):
        super().__init__(message)
        self.achieved_tol = achieved_tol


class FormMismatchError(ToepspecError):
    """Two independent closed forms of the same quantity disagree."""
