"""circlelab exceptions package."""

from .base import CircleLabError
from .config import (
    ConfigError,
    SchemaVersionError,
    UnknownConfigKeyError,
    MissingConfigKeyError,
    InvalidConfigValueError,
    UnknownExperimentError,
)
from .domain import (
    DomainError,
    PreconditionError,
    InvalidLiftError,
    NonIntegerCocycleResidueError,
    CoveringRelationError,
    AlphaOutOfBoundError,
    NoConvergentSubsequenceError,
    OrbitExplosionError,
    InconclusiveClassificationError,
    ThetaNotPeriodicError,
    QuotientInconsistentError,
    DegenerateBoundaryError,
    GraphNotHomeomorphismError,
    IdentityViolationError,
    BallTooLargeError,
    LPFailureError,
    BallMismatchError,
    NormCapError,
)

__all__ = [
    'CircleLabError',
    'ConfigError',
    'SchemaVersionError',
    'UnknownConfigKeyError',
    'MissingConfigKeyError',
    'InvalidConfigValueError',
    'UnknownExperimentError',
    'DomainError',
    'PreconditionError',
    'InvalidLiftError',
    'NonIntegerCocycleResidueError',
    'CoveringRelationError',
    'AlphaOutOfBoundError',
    'NoConvergentSubsequenceError',
    'OrbitExplosionError',
    'InconclusiveClassificationError',
    'ThetaNotPeriodicError',
    'QuotientInconsistentError',
    'DegenerateBoundaryError',
    'GraphNotHomeomorphismError',
    'IdentityViolationError',
    'BallTooLargeError',
    'LPFailureError',
    'BallMismatchError',
    'NormCapError',
]
