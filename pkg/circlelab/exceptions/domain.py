"""Domain exceptions raised by the numerical modules."""
from .base import CircleLabError


class DomainError(CircleLabError):
    """Raised when a computation cannot produce a trustworthy result."""
    def __init__(self, message, operation=None, evidence=None):
        super().__init__(message)
        self.operation = operation
        self.evidence = dict(evidence or {})

    def to_record(self) -> dict:
        return {
            "error": type(self).__name__,
            "message": str(self),
            "operation": self.operation,
            "evidence": self.evidence,
        }


class PreconditionError(DomainError):
    """Raised when an operation is called outside its domain."""
    pass

class InvalidLiftError(DomainError):
    """Raised when a lift descriptor does not define an increasing degree-one map."""
    pass

class NonIntegerCocycleResidueError(DomainError):
    """Raised when an Euler cocycle value is not an integer up to rounding."""
    pass

class CoveringRelationError(DomainError):
    """Raised when two maps do not satisfy the degree-k covering relation."""
    pass

class AlphaOutOfBoundError(DomainError):
    """Raised when a covering offset exceeds k + 1 in absolute value."""
    pass

class NoConvergentSubsequenceError(DomainError):
    """Raised when a monotone sample is too short to extract a subsequence."""
    pass

class OrbitExplosionError(DomainError):
    """Raised when orbit exploration exceeds its evaluation cap."""
    pass

class InconclusiveClassificationError(DomainError):
    """Raised when orbit evidence supports no single kind."""
    pass

class ThetaNotPeriodicError(DomainError):
    """Raised when the fitted centralizer generator has no order up to the search limit."""
    pass

class QuotientInconsistentError(DomainError):
    """Raised when pushed generators fail the covering relation."""
    pass

class DegenerateBoundaryError(DomainError):
    """Raised when too many sampled boundary triples coincide."""
    pass

class GraphNotHomeomorphismError(DomainError):
    """Raised when a sampled graph violates circular monotonicity beyond the slack."""
    pass

class IdentityViolationError(DomainError):
    """Raised when tabulated Euler values break the cocycle identity."""
    pass

class BallTooLargeError(DomainError):
    """Raised when a word-ball exceeds the configured cap."""
    pass

class LPFailureError(DomainError):
    """Raised when the norm LP does not terminate with an optimum."""
    pass

class BallMismatchError(DomainError):
    """Raised when combined tables are not built over the same ball."""
    pass

class NormCapError(DomainError):
    """Raised when a single-action norm bound exceeds one half."""
    pass
