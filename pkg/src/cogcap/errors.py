"""Exception hierarchy shared by all cogcap modules."""


class CogcapError(Exception):
    """Base class for all cogcap errors."""


class ZeroGain(CogcapError):
    """A channel gain required to be nonzero is zero (transform or phase undefined)."""


class NonpositiveNoise(CogcapError):
    """A noise variance is zero or negative."""


class DomainError(CogcapError):
    """An argument is outside its documented domain (e.g. a power split outside [0, 1])."""


class RegimeError(CogcapError):
    """The channel is outside the interference regime in which the quantity is defined."""


class ToleranceError(CogcapError):
    """An iterative computation failed to reach its required residual tolerance."""


class DegenerateSlope(CogcapError):
    """The frontier slope is undefined because the primary rate does not move."""


class EmptySet(CogcapError):
    """A scanned set (e.g. admissible cross gains) contains no member on the grid."""


class SingularMatrix(CogcapError):
    """A 2x2 system is singular or too ill-conditioned to invert reliably."""


class NonPSD(CogcapError):
    """A transmit covariance matrix is not positive semidefinite."""


class ZeroPower(CogcapError):
    """An operation requires strictly positive transmit power."""


class NonConvergence(CogcapError):
    """A control loop exhausted its epoch budget without settling."""


class ConfigError(CogcapError):
    """A channel/config file is malformed or references unknown keys."""
