"""Global polynomial optimization via complex moment / Hermitian-SOS hierarchies."""

from .errors import (
    CommutationFailure,
    DegenerateClique,
    DimensionMismatch,
    DisconnectedNetwork,
    IdentityResidualTooLarge,
    InsufficientOrder,
    IterationLimit,
    MaxItersExceeded,
    MissingSection,
    MomentSosError,
    NoContainingClique,
    NonHermitian,
    NoProgress,
    NotApplicable,
    NumericalFailure,
    OrderTooLow,
    ParseError,
    StitchFailure,
    UnindexedMoment,
)
from .poly import (
    Constraint,
    HermitianPoly,
    Pop,
    evaluate,
    evaluate_real,
    load_pop,
    normalize_hermitian,
    pop_from_json,
    pop_realify,
    pop_to_json,
    real_poly,
    realify,
    save_pop,
)

__version__ = "0.1.0"
