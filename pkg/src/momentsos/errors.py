"""Exception types shared across the package."""


class MomentSosError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(MomentSosError):
    """Multi-index or point length does not match the variable count."""


class NonHermitian(MomentSosError):
    """Coefficient map violates conjugate symmetry beyond tolerance."""


class NoContainingClique(MomentSosError):
    """A constraint's variables are not covered by any clique."""


class NotApplicable(MomentSosError):
    """Symmetry reduction requested for a problem without the symmetry."""


class OrderTooLow(MomentSosError):
    """Relaxation order below a constraint's half-degree."""

    def __init__(self, index, message=None):
        super().__init__(message or f"order too low at constraint {index}")
        self.index = index


class UnindexedMoment(MomentSosError):
    """A required pseudo-moment falls outside every clique basis."""


class NumericalFailure(MomentSosError):
    """Interior-point factorization or scaling broke down."""


class IterationLimit(MomentSosError):
    """Interior-point method hit its iteration cap before converging."""


class InsufficientOrder(MomentSosError):
    """Certification level t requires moments beyond the solved order."""


class CommutationFailure(MomentSosError):
    """Shift operators fail to commute within tolerance."""


class StitchFailure(MomentSosError):
    """Per-clique atoms disagree on shared coordinates."""


class IdentityResidualTooLarge(MomentSosError):
    """Recovered SOS decomposition does not reproduce the objective."""


class NoProgress(MomentSosError):
    """Order-update loop revisited an order vector."""


class MaxItersExceeded(MomentSosError):
    """Multi-order loop ran out of iterations."""

    def __init__(self, message, bound=None, point=None, history=None):
        super().__init__(message)
        self.bound = bound
        self.point = point
        self.history = history


class ParseError(MomentSosError):
    """Malformed case file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class MissingSection(MomentSosError):
    """Case file lacks a required table."""


class DisconnectedNetwork(MomentSosError):
    """Network graph is not connected after preprocessing."""


class DegenerateClique(MomentSosError):
    """First-order moment block of a clique is numerically zero."""
