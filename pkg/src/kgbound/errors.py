"""Exception hierarchy shared by the solver modules."""

from __future__ import annotations


class KGError(ValueError):
    """Base class for all solver errors."""


class PoleError(KGError):
    """An argument sits on a pole of a special function."""


class ParameterError(KGError):
    """A series or recurrence parameter makes a retained denominator vanish."""


class ComplexBranchError(KGError):
    """A square root in the parameter recipe would become complex."""


class DomainError(KGError):
    """A coordinate lies outside the domain of the potential."""


class SingularPointError(KGError):
    """The centrifugal approximation hits its singular point."""


class WindowError(KGError):
    """The trial energy lies outside the open window (-M, M)."""


class SWaveOnlyError(KGError):
    """The model is only solvable for l = 0 in three dimensions."""


class UnsupportedModelError(KGError):
    """The requested operation is not defined for this potential model."""


class NonNormalizableError(KGError):
    """The closed-form state does not decay at a boundary."""


class NoSignChangeError(KGError):
    """The shooting mismatch has the same sign at both bracket ends."""
