"""Exception types shared across the library.

Every error raised on bad input derives from EngineError (a ValueError),
so callers can catch one base class; specific subclasses carry the
contract they police.
"""


class EngineError(ValueError):
    """Base class for all contract violations raised by this library."""


class GraphInvariantError(EngineError):
    """A graph value violates a structural invariant."""


class PermutationError(EngineError):
    """A permutation does not match the object it is applied to."""


class SubstitutionProfileError(EngineError):
    """A substituted graph's profile does not match its vertex."""


class ShrinkDomainError(EngineError):
    """Edge passed to shrink/shrink_set is not an ordinary internal edge."""


class ReductionPreconditionError(EngineError):
    """reduce() called on a marked graph that is not well-marked."""


class UnsupportedSchemeError(EngineError):
    """Operation requires a shrinkable scheme or scheme membership."""


class TruncationError(EngineError):
    """Requested entry lies outside the declared truncation bound."""


class EquivarianceError(EngineError):
    """Group or equivariance mismatch between equivariant values."""


class InvalidSubgroupError(EngineError):
    """Claimed subgroup embedding is not a group homomorphism."""


class UnsupportedBaseError(EngineError):
    """Operation not defined for this base category variant."""


class UnsupportedOracleError(UnsupportedBaseError):
    """Brute-force oracle only runs over the finite-set base."""


class IncompleteOracleError(EngineError):
    """Congruence saturation exceeded its step budget."""


class AutomorphismLimitError(EngineError):
    """Automorphism group exceeds the configured order cap."""
