"""Exception types shared across the package."""


class QuadrepError(Exception):
    """Base class for all package-specific errors."""


class FactorizationBoundError(QuadrepError):
    """Input exceeds the trial-division factorization bound."""


class EnumerationBoundError(QuadrepError):
    """Residue enumeration modulus exceeds the configured bound."""


class RepresentativeSearchError(QuadrepError):
    """Coprime genus representative search exhausted its box."""


class ConsistencyError(QuadrepError):
    """An internal exactness check failed; indicates a bug, not bad input."""
