"""Exception types raised by the numerical pipeline."""


class LandauError(Exception):
    """Base class for all errors raised by this package."""


class QuantumNumberError(LandauError, ValueError):
    """Quantum number is negative, non-integral or above the supported ceiling."""


class NonConvergence(LandauError):
    """Grid doubling failed to reach the requested tolerance."""


class TruncationBias(LandauError):
    """The sampled function has not decayed at the grid edges."""


class ParsevalViolation(LandauError):
    """Norm of the Fourier transform deviates from the position-space norm."""


class UnnormalizedDensity(LandauError, ValueError):
    """A probability density does not integrate to one."""


class PartitionUnderflowWarning(RuntimeWarning):
    """The partition function underflowed to a denormal or zero."""


class SeriesTruncationWarning(RuntimeWarning):
    """A truncated Boltzmann sum omits more than the allowed tail."""
