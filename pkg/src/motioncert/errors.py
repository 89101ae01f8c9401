"""Exception types shared across the package."""


class MotionCertError(Exception):
    """Base class for all package-specific errors."""


class DomainError(MotionCertError, ValueError):
    """An argument lies outside an operation's mathematical domain."""


class EvaluationError(MotionCertError):
    """An indeterminate factor combination (0 times infinity) was hit."""


class PoleOnCurveError(MotionCertError):
    """A map hit a pole at a curve sample."""

    def __init__(self, theta: float, message: str | None = None):
        self.theta = float(theta)
        super().__init__(message or f"pole on curve at parameter theta={theta!r}")


class PointOnCurveError(MotionCertError):
    """A curve passes through, or unresolvably close to, the base point."""


class CertificationError(MotionCertError):
    """An integer certificate could not be established."""


class InjectivityError(MotionCertError):
    """A difference curve vanished at a sample."""


class ConstraintViolation(MotionCertError):
    """A construction predicate failed.  Carries the predicate text."""

    def __init__(self, predicate: str, message: str | None = None):
        self.predicate = predicate
        super().__init__(message or f"constraint violated: {predicate}")


class ConstructionInfeasible(MotionCertError):
    """No admissible parameter choice exists on the search grid."""


class DegenerateCrossingError(MotionCertError):
    """A ray crossing could not be resolved transversally."""
