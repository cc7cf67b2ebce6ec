"""Exception types shared across the package."""


class HypercurvError(Exception):
    """Base class for every error raised by this package."""


class DomainError(HypercurvError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RegimeError(DomainError):
    """Exact rationals and floats were mixed, or a float was exactified."""


class UnsupportedCaseError(DomainError):
    """No closed-form certificate is registered for the given system."""


class SingularPatchError(HypercurvError):
    """The patch Jacobian is rank deficient, so the patch is not immersed."""


class EigenSolverError(HypercurvError):
    """The generalized symmetric eigensolve failed."""


class VerificationError(HypercurvError):
    """A consistency check that must hold mathematically came out false."""
