"""Exception types shared across the library."""


class AdjointKeelError(Exception):
    """Base class for all library-specific failures."""


class DegenerateInputError(AdjointKeelError, ValueError):
    """Input polygon collapses to a point or segment."""


class UnboundedRegionError(AdjointKeelError, ValueError):
    """Half-plane system describes an unbounded region."""


class NonLatticeVerticesError(AdjointKeelError, ValueError):
    """Operation requires integral vertices but got proper fractions."""


class ModelMismatchError(AdjointKeelError, ValueError):
    """Arithmetic between divisor classes on different surface models."""


class UnsupportedRankError(AdjointKeelError, ValueError):
    """Picard rank outside the finitely-generated range."""


class NotContractibleError(AdjointKeelError, ValueError):
    """Class is not an exceptional class eligible for blowdown."""


class UndecidedError(AdjointKeelError, RuntimeError):
    """Effectivity peeling did not terminate within the step cap."""


class NotNefError(AdjointKeelError, ValueError):
    """Adjoint chain input pairs negatively with an effective class."""


class NotBigError(AdjointKeelError, ValueError):
    """Adjoint chain input has nonpositive self-intersection."""


class NonTerminatingError(AdjointKeelError, RuntimeError):
    """Adjoint chain exceeded its level-derived iteration cap."""


class UnknownEndpointError(AdjointKeelError, ValueError):
    """Terminal lattice matches no supported minimal-model case."""


class InvariantViolationError(AdjointKeelError, RuntimeError):
    """A structural invariant failed; signals inconsistent cone data."""
