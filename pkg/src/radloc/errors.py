"""Exception hierarchy shared by the radloc modules."""


class RadlocError(Exception):
    """Base class for every error raised by radloc."""


class PreconditionError(RadlocError, ValueError):
    """An argument violates a documented precondition (empty list, L < 1, ...)."""


class DegenerateGeometryError(RadlocError, ValueError):
    """The requested construction is undefined, e.g. coincident circle centers."""


class NoIntersectionError(RadlocError, ValueError):
    """Two circles do not properly intersect, so they have no common chord."""


class MetricUndefinedError(RadlocError, ValueError):
    """No sensor was localized in any trial."""


class ConfigError(RadlocError, ValueError):
    """A scenario configuration is malformed or out of range.

    ``field`` names the offending key when one can be identified.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field
