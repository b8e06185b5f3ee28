"""Domain errors of the workbench.

Every error raised on purpose by the library derives from ``HookdualError`` so
the controller can map it onto an exit code. Messages name the offending
cell, weight or degree.
"""


class HookdualError(Exception):
    """Base class for all workbench errors."""


class ConfigError(HookdualError):
    """Invalid environment configuration."""


class UnsupportedAlgebraError(HookdualError):
    """Family/rank combination that is not realized."""


class WeightError(HookdualError):
    """Non-dominant input, weight outside R, or coordinates of the wrong length."""


class TruncationError(HookdualError):
    """Read beyond the guaranteed order of a series or an insufficient weight bound."""


class LevelDependenceError(HookdualError):
    """An exponent comparison whose level parts do not cancel."""


class NonInvariantError(HookdualError):
    """A coefficient that should be a Weyl-invariant character is not one."""


class NegativeMultiplicityError(HookdualError):
    """Highest-weight stripping produced a negative multiplicity."""


class ComplexError(HookdualError):
    """d^2 != 0, or a filtration piece that is not homogeneous."""


class IdentityError(HookdualError):
    """A table identity, pairing identity or character identity failed."""


class CacheCorruptionError(HookdualError):
    """A cached report does not match the hash of its request."""
