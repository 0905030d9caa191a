"""Exception hierarchy.

Infeasibility is never an error here: an infeasible plan is the void OIE.
These exceptions cover malformed input and resource limits only.
"""


class OIEError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(OIEError, ValueError):
    pass


class CapacityExceeded(OIEError):
    """An enumeration would exceed its configured cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class PreconditionViolated(OIEError):
    pass


class InvalidChoice(OIEError, ValueError):
    pass


class Unsupported(OIEError):
    pass
