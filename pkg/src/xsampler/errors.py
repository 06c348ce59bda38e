"""Exception hierarchy shared by all modules."""


class XSamplerError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(XSamplerError, ValueError):
    """Invalid or inconsistent experiment configuration."""


class PlacementError(ConfigError):
    """Pulses cannot be placed inside the support interval."""


class GridMismatchError(XSamplerError, ValueError):
    """Two sampled signals do not live on the same grid."""


class NumericalError(XSamplerError, ArithmeticError):
    """A computation cannot produce a meaningful numerical result."""


class ZeroSignalError(NumericalError):
    """A ratio was requested with a zero-energy denominator."""


class ResolutionError(NumericalError):
    """The time grid is too coarse for the requested lattice."""


class NotAFrameError(NumericalError):
    """The lower frame bound vanishes."""


class RankDeficientError(NumericalError):
    """Least squares on a support whose columns are linearly dependent."""

    def __init__(self, support, message=None):
        self.support = tuple(int(k) for k in support)
        super().__init__(message or f"rank-deficient column set {list(self.support)}")
