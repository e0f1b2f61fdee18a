"""Exception types shared across the package."""


class ChainFFTError(Exception):
    """Base class for all package errors."""


class InvalidVertexError(ChainFFTError, ValueError):
    """A partition is not a legal vertex of the requested diagram level."""


class ArgumentError(ChainFFTError, ValueError):
    """Inputs are structurally inconsistent (sizes, levels, kinds)."""


class ParameterError(ChainFFTError, ValueError):
    """The chain parameter q makes a required denominator vanish."""


class CapabilityError(ChainFFTError, ValueError):
    """The requested computation is outside the supported desk-scale range."""


class FactorizationError(ChainFFTError, RuntimeError):
    """Internal invariant violation: a basis diagram failed to factor."""
