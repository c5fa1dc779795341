"""Exception types shared across the package."""

from __future__ import annotations


class FlatCtcError(Exception):
    """Base class for all package errors."""


class NotLorentzError(FlatCtcError):
    """Linear part is not an orientation/time-orientation preserving
    Lorentz matrix.  Carries the max-abs residual of g^T J g - J."""

    def __init__(self, message: str, defect: float):
        super().__init__(f"{message} (gT.J.g residual {defect:.3e})")
        self.defect = defect


class SingularMatrixError(FlatCtcError):
    """Conjugating matrix is not invertible."""


class IdentityInputError(FlatCtcError):
    """Operation is undefined when the linear part is the identity."""


class NotHyperbolicError(FlatCtcError):
    """Operation requires a hyperbolic isometry (trace of the linear
    part above 3)."""


class NotEllipticError(FlatCtcError):
    """Operation requires an elliptic isometry."""


class NotParabolicError(FlatCtcError):
    """Operation requires a parabolic isometry."""


class HasFixedPointError(FlatCtcError):
    """Operation requires a fixed-point-free isometry."""


class WitnessBoundExceededError(FlatCtcError):
    """No timelike power found within the allowed bound.  Carries the
    analytic bound that is guaranteed to contain a witness."""

    def __init__(self, message: str, analytic_bound: int):
        super().__init__(f"{message} (analytic witness bound: {analytic_bound})")
        self.analytic_bound = analytic_bound


class NotTimelikeDisplacementError(FlatCtcError):
    """Curve construction needs a timelike displacement at the base point."""


class TangentNotTimelikeError(FlatCtcError):
    """A sampled tangent of the blended curve failed the timelike check.
    Carries the offending parameter value."""

    def __init__(self, message: str, t: float):
        super().__init__(f"{message} (at t={t!r})")
        self.t = t


class NotClosedError(FlatCtcError):
    """Curve does not close up in the quotient.  Carries the residual."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class FormatError(FlatCtcError):
    """Malformed isometry or group document."""
