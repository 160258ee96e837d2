"""Exception types shared across the package."""

__all__ = [
    "CrackscanError",
    "FormatError",
    "SizeError",
    "DomainError",
    "PartitionError",
    "ParameterError",
    "InfeasibleMeshError",
]


class CrackscanError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(CrackscanError):
    """A volume header / sidecar / config file is malformed.

    The message names the offending field.
    """


class SizeError(CrackscanError):
    """A raw payload does not match the size implied by its header."""


class DomainError(CrackscanError):
    """A box, index, or coordinate lies outside a volume's domain."""


class PartitionError(CrackscanError):
    """The volume cannot be tiled into g^3 equal cubes."""


class ParameterError(CrackscanError, ValueError):
    """A numeric parameter violates its precondition (sigma <= 0, ...)."""


class InfeasibleMeshError(CrackscanError):
    """No mesh size >= 1 satisfies the requested miss-probability level."""
