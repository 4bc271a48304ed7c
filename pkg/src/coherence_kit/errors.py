"""Exception types shared across the package."""


class CoherenceKitError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(CoherenceKitError):
    """Operands live in Hilbert spaces of different dimension."""


class ValidationError(CoherenceKitError):
    """An input violates a structural invariant (hermiticity, trace, normalization, ...)."""


class NotCertifying(CoherenceKitError):
    """The measurement setup cannot certify coherence, so the requested quantity is undefined."""


class NodeCollision(CoherenceKitError):
    """Reconstruction nodes coincide; the phase parameter behaves like a rational number."""
