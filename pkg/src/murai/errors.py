"""Exception types shared across the package.

Size-cap violations get their own branch of the hierarchy so the CLI can map
them to a dedicated exit code (3), distinct from usage errors (2) and internal
invariant failures (4).
"""


class MuraiError(Exception):
    """Base class for all library errors."""


class InvalidMonomialError(MuraiError):
    """An exponent vector is not a valid monomial for the governing composition."""


class InvalidFacetError(MuraiError):
    """A facet mentions a vertex outside the complex's vertex universe."""


class NotProperError(MuraiError):
    """Operation requires a proper multicomplex but the full one was given."""


class SizeCapError(MuraiError):
    """Base class for configured size-cap violations (CLI exit code 3)."""


class CensusTooLargeError(SizeCapError):
    """Grid exceeds the configured cell cap for census enumeration."""


class TooLargeError(SizeCapError):
    """Instance exceeds a configured cap (vertex count, facet count, ...)."""


class InvariantViolation(MuraiError):
    """An internal structural invariant failed (CLI exit code 4)."""
