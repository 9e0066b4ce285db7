"""Exception types shared across the package."""


class AlgebraMismatch(ValueError):
    """Operands do not belong to the same Lie algebra."""


class ActionMismatch(ValueError):
    """Group element or point is incompatible with the requested action."""


class AngleNearPi(ValueError):
    """Rotation angle too close to pi for a well-conditioned logarithm."""


class LogNearAntipode(ValueError):
    """Quaternion too close to the antipode of the identity; log is ill-conditioned."""


class SingularResolvent(ValueError):
    """I - xi/2 is singular, so the Cayley transform is undefined."""


class CriticalPoint(ValueError):
    """Gradient vanishes; the two-form construction is undefined there."""


class CoincidentPoints(ValueError):
    """x == x'; use the pointwise differential instead of a discrete one."""


class FixedPointDivergence(RuntimeError):
    """An implicit stage equation did not converge.

    Carries the step size and the last residual so callers can report
    or retry with a smaller step.
    """

    def __init__(self, message, h=None, residual=None):
        if h is not None:
            message = f"{message} (h={h!r}, residual={residual!r})"
        super().__init__(message)
        self.h = h
        self.residual = residual
